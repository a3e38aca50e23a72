#pragma once

// Field-normalized citation indicators over (field, year) reference sets:
// normalized citation scores and Hazen percentiles.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace credit_engine::norm {

// Raised when NCS is requested against a reference set that is entirely
// uncited (zero mean). Callers decide whether to exclude or abort.
class UndefinedIndicatorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ReferenceSetStats {
  std::string field;
  int year = 0;
  std::int64_t paper_count = 0;
  double mean_citations = 0.0;
  std::vector<std::int64_t> sorted_citations;  // decreasing
};

struct IndicatorValue {
  std::string record_id;
  std::optional<double> ncs;  // absent when every reference set is uncited
  double percentile = 0.0;    // Hazen convention: low value = highly cited
};

ReferenceSetStats make_reference_set(std::string field, int year,
                                     std::vector<std::int64_t> citations);

// Citations divided by the reference-set mean.
double ncs(std::int64_t citations, const ReferenceSetStats& ref);

// Percentile (i - 0.5)/n * 100 for rank i (most cited first). Papers with
// tied citation counts all receive the mean percentile of their block.
std::vector<double> hazen_percentiles(const ReferenceSetStats& ref);

// Tie-averaged percentile of one citation count present in the set.
double percentile_for_citations(const ReferenceSetStats& ref, std::int64_t citations);

// Arithmetic mean.
double aggregate_ncs(const std::vector<double>& values);

// Median; for even counts the mean of the two middle values.
double aggregate_percentiles(std::vector<double> values);

}  // namespace credit_engine::norm
