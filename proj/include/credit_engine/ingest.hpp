#pragma once

// Publication-record ingestion, corpus filters, reference-set construction,
// author-count grouping, and the stats file consumed by `compare`.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "credit_engine/normalize.hpp"

namespace credit_engine::ingest {

struct PublicationRecord {
  std::string id;
  int year = 0;
  std::string field;  // may hold several ';'-separated codes
  int author_count = 0;
  std::int64_t citations = 0;
  std::string doc_type;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct Rejection {
  std::int64_t line = 0;  // physical line the offending record starts on
  std::string reason;
};

struct IngestResult {
  std::vector<PublicationRecord> records;
  std::vector<Rejection> rejected;
};

enum class InputFormat { csv, jsonl };
InputFormat parse_format(std::string_view name);

// Parse a record file. Malformed rows land in the rejection report with
// their line number and reason; an unreadable file or a wrong CSV header is
// fatal.
IngestResult ingest(const std::string& path, InputFormat format);

struct FilterOptions {
  int year_min = 2000;
  int year_max = 2014;
  std::string doc_type = "article";  // matched case-insensitively
};

std::vector<PublicationRecord> filter_corpus(const std::vector<PublicationRecord>& records,
                                             const FilterOptions& options = {});

using RefSetKey = std::pair<std::string, int>;  // (field code, year)

// One reference set per (field, year) pair present. Records listing several
// field codes contribute their citations to each listed field's set.
std::map<RefSetKey, norm::ReferenceSetStats> build_reference_sets(
    const std::vector<PublicationRecord>& records);

// Per-record indicators, aligned with `records` by index. Multi-field
// records average their per-field NCS and percentile values; fields whose
// reference set is entirely uncited contribute no NCS term.
std::vector<norm::IndicatorValue> compute_indicators(
    const std::vector<PublicationRecord>& records,
    const std::map<RefSetKey, norm::ReferenceSetStats>& refsets);

struct AuthorCountBin {
  int n = 0;
  bool open_ended = false;  // trailing "n >= n_max_bin" bin
  std::vector<std::string> record_ids;
  std::int64_t paper_count = 0;
  std::optional<double> ncs_mean;
  std::optional<double> percentile_median;
};

// Bins n = 1..n_max_bin-1 plus an open-ended top bin, all present even when
// empty. Aggregates are absent for empty bins (and ncs_mean when no member
// has a defined NCS).
std::vector<AuthorCountBin> group_by_author_count(
    const std::vector<PublicationRecord>& records,
    const std::vector<norm::IndicatorValue>& indicators, int n_max_bin);

// What the stats file stores: reference sets without their citation lists,
// bins without their record ids.
struct StoredRefSet {
  std::string field;
  int year = 0;
  std::int64_t paper_count = 0;
  double mean_citations = 0.0;

  friend bool operator==(const StoredRefSet&, const StoredRefSet&) = default;
};

struct StoredBin {
  int n = 0;
  bool open_ended = false;
  std::int64_t paper_count = 0;
  std::optional<double> ncs_mean;
  std::optional<double> percentile_median;

  friend bool operator==(const StoredBin&, const StoredBin&) = default;
};

struct StatsFile {
  std::vector<StoredRefSet> refsets;
  std::vector<StoredBin> bins;

  friend bool operator==(const StatsFile&, const StatsFile&) = default;
};

StatsFile make_stats(const std::vector<AuthorCountBin>& bins,
                     const std::map<RefSetKey, norm::ReferenceSetStats>& refsets);

// Line-oriented text format, version line "credit-engine-stats v1", doubles
// at 17 significant digits so load(persist(x)) == x.
void persist_stats(const StatsFile& stats, const std::string& path);
StatsFile load_stats(const std::string& path);

}  // namespace credit_engine::ingest
