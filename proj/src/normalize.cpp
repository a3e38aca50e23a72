#include "credit_engine/normalize.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace credit_engine::norm {

ReferenceSetStats make_reference_set(std::string field, int year,
                                     std::vector<std::int64_t> citations) {
  if (citations.empty()) {
    throw std::domain_error("a reference set requires at least one paper");
  }
  for (const auto c : citations) {
    if (c < 0) throw std::domain_error("citation counts must be nonnegative");
  }
  std::sort(citations.begin(), citations.end(), std::greater<>());
  ReferenceSetStats ref;
  ref.field = std::move(field);
  ref.year = year;
  ref.paper_count = static_cast<std::int64_t>(citations.size());
  const std::int64_t sum = std::accumulate(citations.begin(), citations.end(), std::int64_t{0});
  ref.mean_citations = static_cast<double>(sum) / static_cast<double>(ref.paper_count);
  ref.sorted_citations = std::move(citations);
  return ref;
}

double ncs(std::int64_t citations, const ReferenceSetStats& ref) {
  if (citations < 0) throw std::domain_error("citation counts must be nonnegative");
  if (!(ref.mean_citations > 0.0)) {
    throw UndefinedIndicatorError("NCS undefined: reference set (" + ref.field + ", " +
                                  std::to_string(ref.year) + ") is entirely uncited");
  }
  return static_cast<double>(citations) / ref.mean_citations;
}

std::vector<double> hazen_percentiles(const ReferenceSetStats& ref) {
  const auto& sorted = ref.sorted_citations;
  if (sorted.empty()) throw std::domain_error("empty reference set");
  const double count = static_cast<double>(sorted.size());
  std::vector<double> percentiles(sorted.size());
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    // Mean of (r - 0.5)/n over ranks r = i+1..j, shared by the tied block.
    const double pct = ((static_cast<double>(i + j + 1) / 2.0) - 0.5) / count * 100.0;
    for (std::size_t k = i; k < j; ++k) percentiles[k] = pct;
    i = j;
  }
  return percentiles;
}

double percentile_for_citations(const ReferenceSetStats& ref, std::int64_t citations) {
  const auto& sorted = ref.sorted_citations;
  if (sorted.empty()) throw std::domain_error("empty reference set");
  const auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), citations, std::greater<>());
  if (lo == hi) {
    throw std::domain_error("citation count " + std::to_string(citations) +
                            " is not a member of reference set (" + ref.field + ", " +
                            std::to_string(ref.year) + ")");
  }
  const auto i = static_cast<double>(lo - sorted.begin());
  const auto j = static_cast<double>(hi - sorted.begin());
  return ((i + j + 1.0) / 2.0 - 0.5) / static_cast<double>(sorted.size()) * 100.0;
}

double aggregate_ncs(const std::vector<double>& values) {
  if (values.empty()) throw std::domain_error("cannot aggregate an empty NCS list");
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  return sum / static_cast<double>(values.size());
}

double aggregate_percentiles(std::vector<double> values) {
  if (values.empty()) throw std::domain_error("cannot aggregate an empty percentile list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace credit_engine::norm
