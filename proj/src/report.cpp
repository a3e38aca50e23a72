#include "credit_engine/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "credit_engine/credit.hpp"

namespace credit_engine::report {

namespace {

std::optional<double> indicator_value(const ingest::StoredBin& bin, Indicator indicator) {
  if (indicator == Indicator::ncs) return bin.ncs_mean;
  if (!bin.percentile_median) return std::nullopt;
  // Stored percentiles put the most cited papers at the low end; flip so
  // that larger means more cited before forming ratios.
  return 100.0 - *bin.percentile_median;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

std::map<int, double> relative_empirical(const std::vector<ingest::StoredBin>& bins,
                                         Indicator indicator, double v1) {
  if (!(v1 > 0.0)) throw std::domain_error("v1 must be positive");

  const ingest::StoredBin* baseline = nullptr;
  for (const auto& bin : bins) {
    if (bin.n == 1 && !bin.open_ended) {
      baseline = &bin;
      break;
    }
  }
  if (!baseline) {
    throw std::domain_error("relative values need an n=1 bin as baseline");
  }
  const auto baseline_value = indicator_value(*baseline, indicator);
  if (!baseline_value || *baseline_value == 0.0) {
    throw std::domain_error("n=1 baseline aggregate is missing or zero");
  }

  std::map<int, double> relative;
  for (const auto& bin : bins) {
    if (const auto value = indicator_value(bin, indicator)) {
      relative[bin.n] = *value / *baseline_value * v1;
    }
  }
  return relative;
}

std::vector<ComparisonRow> build_comparison(const ingest::StatsFile& stats, int n_max) {
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");

  const auto ncs_relative = relative_empirical(stats.bins, Indicator::ncs);
  const auto percentile_relative = relative_empirical(stats.bins, Indicator::percentile);
  std::map<int, std::int64_t> paper_counts;
  for (const auto& bin : stats.bins) paper_counts[bin.n] = bin.paper_count;

  std::vector<ComparisonRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    ComparisonRow row;
    row.n = n;
    row.theoretical = expected_value(n);
    row.hsu_model = hsu_citation_model(n);
    if (const auto it = ncs_relative.find(n); it != ncs_relative.end()) {
      row.ncs_relative = it->second;
    }
    if (const auto it = percentile_relative.find(n); it != percentile_relative.end()) {
      row.percentile_relative = it->second;
    }
    if (const auto it = paper_counts.find(n); it != paper_counts.end()) {
      row.paper_count = it->second;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_comparison(const std::vector<ComparisonRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open comparison file for writing: " + path);
  out << "n\ttheoretical\tncs_rel\tpct_rel\tpapers\thsu\n";
  for (const auto& row : rows) {
    out << row.n << '\t' << format_double(row.theoretical) << '\t'
        << (row.ncs_relative ? format_double(*row.ncs_relative) : std::string("-")) << '\t'
        << (row.percentile_relative ? format_double(*row.percentile_relative)
                                    : std::string("-"))
        << '\t' << row.paper_count << '\t' << format_double(row.hsu_model) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing comparison file: " + path);
}

std::vector<ComparisonRow> compare(const std::string& stats_path, int n_max,
                                   const std::string& out_path) {
  const auto stats = ingest::load_stats(stats_path);
  auto rows = build_comparison(stats, n_max);
  write_comparison(rows, out_path);
  return rows;
}

}  // namespace credit_engine::report
