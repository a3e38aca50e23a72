#include "credit_engine/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "json.hpp"

namespace credit_engine::ingest {

namespace {

constexpr std::string_view kStatsVersionLine = "credit-engine-stats v1";
constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2100;

// RFC-4180-style reader: quoted fields may contain commas, doubled quotes,
// and newlines. Reports the physical line each logical record starts on.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // False at end of input. A record with broken quoting comes back with
  // `error` set instead of fields.
  bool next(std::vector<std::string>& fields, std::int64_t& start_line, std::string& error) {
    std::string line;
    if (!std::getline(in_, line)) return false;
    strip_cr(line);
    ++line_number_;
    start_line = line_number_;
    fields.clear();
    error.clear();

    enum class State { field_start, unquoted, quoted, after_quote };
    State state = State::field_start;
    std::string field;
    std::size_t pos = 0;
    for (;;) {
      if (pos == line.size()) {
        if (state == State::quoted) {
          // Quoted fields may span physical lines.
          if (!std::getline(in_, line)) {
            error = "unterminated quoted field";
            return true;
          }
          strip_cr(line);
          ++line_number_;
          field += '\n';
          pos = 0;
          continue;
        }
        fields.push_back(std::move(field));
        return true;
      }
      const char ch = line[pos++];
      switch (state) {
        case State::field_start:
          if (ch == '"') {
            state = State::quoted;
          } else if (ch == ',') {
            fields.emplace_back();
          } else {
            field += ch;
            state = State::unquoted;
          }
          break;
        case State::unquoted:
          if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            state = State::field_start;
          } else if (ch == '"') {
            error = "unexpected quote inside unquoted field";
            return true;
          } else {
            field += ch;
          }
          break;
        case State::quoted:
          if (ch == '"') {
            if (pos < line.size() && line[pos] == '"') {
              field += '"';
              ++pos;
            } else {
              state = State::after_quote;
            }
          } else {
            field += ch;
          }
          break;
        case State::after_quote:
          if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
            state = State::field_start;
          } else {
            error = "unexpected character after closing quote";
            return true;
          }
          break;
      }
    }
  }

 private:
  static void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }

  std::istream& in_;
  std::int64_t line_number_ = 0;
};

bool parse_int(std::string_view text, std::int64_t& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && !text.empty();
}

bool parse_int(std::string_view text, int& out) {
  std::int64_t wide = 0;
  if (!parse_int(text, wide)) return false;
  if (wide < INT32_MIN || wide > INT32_MAX) return false;
  out = static_cast<int>(wide);
  return true;
}

std::vector<std::string> split_field_codes(const std::string& field) {
  std::vector<std::string> codes;
  std::size_t begin = 0;
  while (begin <= field.size()) {
    std::size_t end = field.find(';', begin);
    if (end == std::string::npos) end = field.size();
    std::size_t lo = begin;
    std::size_t hi = end;
    while (lo < hi && std::isspace(static_cast<unsigned char>(field[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(field[hi - 1]))) --hi;
    if (hi > lo) codes.push_back(field.substr(lo, hi - lo));
    if (end == field.size()) break;
    begin = end + 1;
  }
  return codes;
}

// Empty reason string means the record is valid.
std::string validate(const PublicationRecord& record) {
  if (record.id.empty()) return "id must be non-empty";
  if (record.year < kMinYear || record.year > kMaxYear) {
    return "year " + std::to_string(record.year) + " outside sanity bounds [" +
           std::to_string(kMinYear) + ", " + std::to_string(kMaxYear) + "]";
  }
  if (record.author_count < 1) return "author_count must be >= 1";
  if (record.citations < 0) return "citations must be >= 0";
  if (split_field_codes(record.field).empty()) return "field must contain at least one code";
  return {};
}

IngestResult ingest_csv(std::istream& in, const std::string& path) {
  IngestResult result;
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::int64_t line = 0;
  std::string error;

  if (!reader.next(fields, line, error) || !error.empty() ||
      fields != std::vector<std::string>{"id", "year", "field", "n_authors", "citations",
                                         "doc_type"}) {
    throw std::runtime_error(path +
                             ": expected CSV header id,year,field,n_authors,citations,doc_type");
  }

  while (reader.next(fields, line, error)) {
    if (!error.empty()) {
      result.rejected.push_back({line, error});
      continue;
    }
    if (fields.size() != 6) {
      result.rejected.push_back(
          {line, "expected 6 columns, got " + std::to_string(fields.size())});
      continue;
    }
    PublicationRecord record;
    record.id = fields[0];
    record.field = fields[2];
    record.doc_type = fields[5];
    if (!parse_int(fields[1], record.year)) {
      result.rejected.push_back({line, "year: not an integer: '" + fields[1] + "'"});
      continue;
    }
    if (!parse_int(fields[3], record.author_count)) {
      result.rejected.push_back({line, "n_authors: not an integer: '" + fields[3] + "'"});
      continue;
    }
    if (!parse_int(fields[4], record.citations)) {
      result.rejected.push_back({line, "citations: not an integer: '" + fields[4] + "'"});
      continue;
    }
    if (auto reason = validate(record); !reason.empty()) {
      result.rejected.push_back({line, std::move(reason)});
      continue;
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

IngestResult ingest_jsonl(std::istream& in, const std::string&) {
  IngestResult result;
  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      result.rejected.push_back({line_number, "empty line"});
      continue;
    }
    const auto parsed = nlohmann::json::parse(line, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      result.rejected.push_back({line_number, "not a JSON object"});
      continue;
    }
    auto require = [&](const char* key, bool (nlohmann::json::*is_type)() const,
                       const char* type_name) -> const nlohmann::json* {
      const auto it = parsed.find(key);
      if (it == parsed.end()) {
        result.rejected.push_back({line_number, std::string("missing key: ") + key});
        return nullptr;
      }
      if (!((*it).*is_type)()) {
        result.rejected.push_back(
            {line_number, std::string(key) + " must be " + type_name});
        return nullptr;
      }
      return &*it;
    };
    const auto* id = require("id", &nlohmann::json::is_string, "a string");
    if (!id) continue;
    const auto* year = require("year", &nlohmann::json::is_number_integer, "an integer");
    if (!year) continue;
    const auto* field = require("field", &nlohmann::json::is_string, "a string");
    if (!field) continue;
    const auto* n_authors =
        require("n_authors", &nlohmann::json::is_number_integer, "an integer");
    if (!n_authors) continue;
    const auto* citations =
        require("citations", &nlohmann::json::is_number_integer, "an integer");
    if (!citations) continue;
    const auto* doc_type = require("doc_type", &nlohmann::json::is_string, "a string");
    if (!doc_type) continue;

    // Narrow through int64 first; get<int>() would wrap silently.
    const auto wide_year = year->get<std::int64_t>();
    const auto wide_authors = n_authors->get<std::int64_t>();
    if (wide_year < INT32_MIN || wide_year > INT32_MAX || wide_authors < INT32_MIN ||
        wide_authors > INT32_MAX) {
      result.rejected.push_back({line_number, "year or n_authors out of range"});
      continue;
    }

    PublicationRecord record;
    record.id = id->get<std::string>();
    record.year = static_cast<int>(wide_year);
    record.field = field->get<std::string>();
    record.author_count = static_cast<int>(wide_authors);
    record.citations = citations->get<std::int64_t>();
    record.doc_type = doc_type->get<std::string>();
    if (auto reason = validate(record); !reason.empty()) {
      result.rejected.push_back({line_number, std::move(reason)});
      continue;
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string("-");
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t end = line.find('\t', begin);
    if (end == std::string_view::npos) {
      parts.push_back(line.substr(begin));
      return parts;
    }
    parts.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
}

double parse_double_or_throw(std::string_view text, const std::string& context) {
  std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (end != owned.c_str() + owned.size() || owned.empty()) {
    throw std::runtime_error(context + ": not a number: '" + owned + "'");
  }
  return value;
}

}  // namespace

InputFormat parse_format(std::string_view name) {
  if (name == "csv") return InputFormat::csv;
  if (name == "jsonl") return InputFormat::jsonl;
  throw std::invalid_argument("unknown input format: " + std::string(name));
}

IngestResult ingest(const std::string& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  // Tolerate a UTF-8 byte order mark.
  char bom[3] = {};
  in.read(bom, 3);
  if (!(in.gcount() == 3 && bom[0] == '\xef' && bom[1] == '\xbb' && bom[2] == '\xbf')) {
    in.clear();
    in.seekg(0);
  }
  return format == InputFormat::csv ? ingest_csv(in, path) : ingest_jsonl(in, path);
}

std::vector<PublicationRecord> filter_corpus(const std::vector<PublicationRecord>& records,
                                             const FilterOptions& options) {
  if (options.year_min > options.year_max) {
    throw std::domain_error("year_min must not exceed year_max");
  }
  std::vector<PublicationRecord> kept;
  for (const auto& record : records) {
    if (record.year < options.year_min || record.year > options.year_max) continue;
    if (!iequals(record.doc_type, options.doc_type)) continue;
    kept.push_back(record);
  }
  return kept;
}

std::map<RefSetKey, norm::ReferenceSetStats> build_reference_sets(
    const std::vector<PublicationRecord>& records) {
  std::map<RefSetKey, std::vector<std::int64_t>> citations;
  for (const auto& record : records) {
    for (auto& code : split_field_codes(record.field)) {
      citations[{std::move(code), record.year}].push_back(record.citations);
    }
  }
  std::map<RefSetKey, norm::ReferenceSetStats> refsets;
  for (auto& [key, values] : citations) {
    refsets.emplace(key, norm::make_reference_set(key.first, key.second, std::move(values)));
  }
  return refsets;
}

std::vector<norm::IndicatorValue> compute_indicators(
    const std::vector<PublicationRecord>& records,
    const std::map<RefSetKey, norm::ReferenceSetStats>& refsets) {
  std::vector<norm::IndicatorValue> indicators;
  indicators.reserve(records.size());
  for (const auto& record : records) {
    double percentile_sum = 0.0;
    double ncs_sum = 0.0;
    int field_count = 0;
    int ncs_count = 0;
    for (const auto& code : split_field_codes(record.field)) {
      const auto it = refsets.find({code, record.year});
      if (it == refsets.end()) {
        throw std::invalid_argument("no reference set for (" + code + ", " +
                                    std::to_string(record.year) + "); record " + record.id);
      }
      percentile_sum += norm::percentile_for_citations(it->second, record.citations);
      ++field_count;
      if (it->second.mean_citations > 0.0) {
        ncs_sum += norm::ncs(record.citations, it->second);
        ++ncs_count;
      }
    }
    norm::IndicatorValue value;
    value.record_id = record.id;
    value.percentile = percentile_sum / field_count;
    if (ncs_count > 0) value.ncs = ncs_sum / ncs_count;
    indicators.push_back(std::move(value));
  }
  return indicators;
}

std::vector<AuthorCountBin> group_by_author_count(
    const std::vector<PublicationRecord>& records,
    const std::vector<norm::IndicatorValue>& indicators, int n_max_bin) {
  if (n_max_bin < 2) throw std::domain_error("n_max_bin must be >= 2");
  if (records.size() != indicators.size()) {
    throw std::invalid_argument("records and indicators must have equal length");
  }

  std::vector<AuthorCountBin> bins(static_cast<std::size_t>(n_max_bin));
  std::vector<std::vector<double>> ncs_values(bins.size());
  std::vector<std::vector<double>> percentile_values(bins.size());
  for (int n = 1; n <= n_max_bin; ++n) {
    bins[static_cast<std::size_t>(n) - 1].n = n;
    bins[static_cast<std::size_t>(n) - 1].open_ended = n == n_max_bin;
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].id != indicators[i].record_id) {
      throw std::invalid_argument("records and indicators are misaligned at index " +
                                  std::to_string(i));
    }
    const auto slot =
        static_cast<std::size_t>(std::min(records[i].author_count, n_max_bin)) - 1;
    bins[slot].record_ids.push_back(records[i].id);
    percentile_values[slot].push_back(indicators[i].percentile);
    if (indicators[i].ncs) ncs_values[slot].push_back(*indicators[i].ncs);
  }

  for (std::size_t slot = 0; slot < bins.size(); ++slot) {
    bins[slot].paper_count = static_cast<std::int64_t>(bins[slot].record_ids.size());
    if (!ncs_values[slot].empty()) {
      // Summation in value order keeps the mean independent of input order.
      std::sort(ncs_values[slot].begin(), ncs_values[slot].end());
      bins[slot].ncs_mean = norm::aggregate_ncs(ncs_values[slot]);
    }
    if (!percentile_values[slot].empty()) {
      bins[slot].percentile_median = norm::aggregate_percentiles(percentile_values[slot]);
    }
  }
  return bins;
}

StatsFile make_stats(const std::vector<AuthorCountBin>& bins,
                     const std::map<RefSetKey, norm::ReferenceSetStats>& refsets) {
  StatsFile stats;
  stats.refsets.reserve(refsets.size());
  for (const auto& [key, ref] : refsets) {
    stats.refsets.push_back({ref.field, ref.year, ref.paper_count, ref.mean_citations});
  }
  stats.bins.reserve(bins.size());
  for (const auto& bin : bins) {
    stats.bins.push_back(
        {bin.n, bin.open_ended, bin.paper_count, bin.ncs_mean, bin.percentile_median});
  }
  return stats;
}

void persist_stats(const StatsFile& stats, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open stats file for writing: " + path);
  out << kStatsVersionLine << '\n';
  out << "[refset]\n";
  for (const auto& ref : stats.refsets) {
    if (ref.field.find_first_of("\t\n") != std::string::npos) {
      throw std::runtime_error("field code contains a tab or newline: " + ref.field);
    }
    out << ref.field << '\t' << ref.year << '\t' << ref.paper_count << '\t'
        << format_double(ref.mean_citations) << '\n';
  }
  out << "[bin]\n";
  for (const auto& bin : stats.bins) {
    out << bin.n << (bin.open_ended ? "+" : "") << '\t' << bin.paper_count << '\t'
        << format_optional(bin.ncs_mean) << '\t' << format_optional(bin.percentile_median)
        << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing stats file: " + path);
}

StatsFile load_stats(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open stats file: " + path);

  std::string line;
  if (!std::getline(in, line) || line != kStatsVersionLine) {
    throw std::runtime_error(path + ": incompatible stats file version: expected '" +
                             std::string(kStatsVersionLine) + "', got '" + line + "'");
  }

  StatsFile stats;
  enum class Section { none, refset, bin };
  Section section = Section::none;
  std::int64_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::string context = path + ":" + std::to_string(line_number);
    if (line == "[refset]") {
      section = Section::refset;
      continue;
    }
    if (line == "[bin]") {
      section = Section::bin;
      continue;
    }
    if (line[0] == '[') throw std::runtime_error(context + ": unknown section tag " + line);
    const auto parts = split_tabs(line);
    if (section == Section::refset) {
      if (parts.size() != 4) throw std::runtime_error(context + ": expected 4 columns");
      StoredRefSet ref;
      ref.field = std::string(parts[0]);
      if (!parse_int(parts[1], ref.year)) {
        throw std::runtime_error(context + ": bad year");
      }
      if (!parse_int(parts[2], ref.paper_count)) {
        throw std::runtime_error(context + ": bad paper count");
      }
      ref.mean_citations = parse_double_or_throw(parts[3], context);
      stats.refsets.push_back(std::move(ref));
    } else if (section == Section::bin) {
      if (parts.size() != 4) throw std::runtime_error(context + ": expected 4 columns");
      StoredBin bin;
      std::string_view n_text = parts[0];
      if (!n_text.empty() && n_text.back() == '+') {
        bin.open_ended = true;
        n_text.remove_suffix(1);
      }
      if (!parse_int(n_text, bin.n)) throw std::runtime_error(context + ": bad bin n");
      if (!parse_int(parts[1], bin.paper_count)) {
        throw std::runtime_error(context + ": bad paper count");
      }
      if (parts[2] != "-") bin.ncs_mean = parse_double_or_throw(parts[2], context);
      if (parts[3] != "-") bin.percentile_median = parse_double_or_throw(parts[3], context);
      stats.bins.push_back(std::move(bin));
    } else {
      throw std::runtime_error(context + ": data before any section tag");
    }
  }
  return stats;
}

}  // namespace credit_engine::ingest
