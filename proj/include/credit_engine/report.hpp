#pragma once

// Comparison of the closed-form expected values against empirical
// field-normalized indicators, and the command-line entry point.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "credit_engine/ingest.hpp"

namespace credit_engine::report {

enum class Indicator { ncs, percentile };

struct ComparisonRow {
  int n = 0;
  double theoretical = 0.0;  // 2n/(n+1), independent of the data
  std::optional<double> ncs_relative;
  std::optional<double> percentile_relative;
  std::int64_t paper_count = 0;
  double hsu_model = 0.0;
};

// Bin aggregates relative to the single-author bin, scaled by v1. Stored
// percentiles are flipped to high-is-better (100 - p) before the ratio so
// both indicators rise with citation impact. Bins without a defined
// aggregate are omitted; a missing or zero n=1 baseline is an error.
std::map<int, double> relative_empirical(const std::vector<ingest::StoredBin>& bins,
                                         Indicator indicator, double v1 = 1.0);

std::vector<ComparisonRow> build_comparison(const ingest::StatsFile& stats, int n_max);

// Tab-separated table with header n/theoretical/ncs_rel/pct_rel/papers/hsu;
// absent cells are written as "-", doubles at full precision.
void write_comparison(const std::vector<ComparisonRow>& rows, const std::string& path);

std::vector<ComparisonRow> compare(const std::string& stats_path, int n_max,
                                   const std::string& out_path);

// CLI entry point. Exit status 0 on success, 1 on usage errors, 2 on data
// errors.
int run(int argc, char** argv);

}  // namespace credit_engine::report
