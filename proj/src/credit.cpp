#include "credit_engine/credit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace credit_engine {

namespace {

void check_author_count(int n, int min_n = 1) {
  if (n < min_n) {
    throw std::domain_error("author count must be >= " + std::to_string(min_n) +
                            ", got " + std::to_string(n));
  }
  if (n > kMaxAuthorCount) {
    throw std::range_error("author count " + std::to_string(n) +
                           " exceeds the supported maximum " +
                           std::to_string(kMaxAuthorCount));
  }
}

void check_model(const ValuationModel& model) {
  if (!(model.base_value > 0.0)) {
    throw std::domain_error("base_value must be positive");
  }
}

}  // namespace

CountingMethod parse_counting_method(std::string_view name) {
  if (name == "paper_equal") return CountingMethod::paper_equal;
  if (name == "paper_ordered") return CountingMethod::paper_ordered;
  if (name == "full") return CountingMethod::full;
  if (name == "fractional") return CountingMethod::fractional;
  if (name == "arithmetic") return CountingMethod::arithmetic;
  if (name == "geometric") return CountingMethod::geometric;
  if (name == "harmonic") return CountingMethod::harmonic;
  throw std::invalid_argument("unknown counting method: " + std::string(name));
}

std::string_view to_string(CountingMethod method) {
  switch (method) {
    case CountingMethod::paper_equal: return "paper_equal";
    case CountingMethod::paper_ordered: return "paper_ordered";
    case CountingMethod::full: return "full";
    case CountingMethod::fractional: return "fractional";
    case CountingMethod::arithmetic: return "arithmetic";
    case CountingMethod::geometric: return "geometric";
    case CountingMethod::harmonic: return "harmonic";
  }
  throw std::invalid_argument("invalid counting method value");
}

double expected_value(int n, const ValuationModel& model) {
  check_author_count(n);
  check_model(model);
  return 2.0 * n / (n + 1.0) * model.base_value;
}

double equal_credits(int n, const ValuationModel& model) {
  return expected_value(n, model) / n;
}

double recursion_step(double v_prev, int n) {
  check_author_count(n, 2);
  if (!(v_prev > 0.0)) {
    throw std::domain_error("recursion requires a positive previous value");
  }
  const double dn = n;
  return dn * dn / ((dn - 1.0) * (dn + 1.0)) * v_prev;
}

CreditVector ordered_credits(int n, const ValuationModel& model) {
  const double vn = expected_value(n, model);
  std::vector<double> credits(static_cast<std::size_t>(n));
  double suffix = 0.0;  // sum_{j=i..n} 1/j
  for (int i = n; i >= 1; --i) {
    suffix += 1.0 / i;
    credits[static_cast<std::size_t>(i) - 1] = vn * suffix / n;
  }
  return {CountingMethod::paper_ordered, n, std::move(credits), vn};
}

CreditVector baseline_credits(CountingMethod method, int n) {
  check_author_count(n);
  std::vector<double> credits(static_cast<std::size_t>(n));
  double total = 1.0;
  switch (method) {
    case CountingMethod::full:
      for (auto& c : credits) c = 1.0;
      total = n;
      break;
    case CountingMethod::fractional:
      for (auto& c : credits) c = 1.0 / n;
      break;
    case CountingMethod::harmonic: {
      double hn = 0.0;
      for (int j = n; j >= 1; --j) hn += 1.0 / j;
      for (int i = 1; i <= n; ++i) credits[i - 1] = 1.0 / i / hn;
      break;
    }
    case CountingMethod::geometric: {
      // 2^(n-i) / (2^n - 1) written as 2^-i / (1 - 2^-n) so large n cannot
      // overflow; entries simply underflow toward zero deep in the tail.
      const double norm = 1.0 - std::exp2(-static_cast<double>(n));
      for (int i = 1; i <= n; ++i) credits[i - 1] = std::exp2(-static_cast<double>(i)) / norm;
      break;
    }
    case CountingMethod::arithmetic: {
      const double weight_sum = 0.5 * static_cast<double>(n) * (n + 1.0);
      for (int i = 1; i <= n; ++i) credits[i - 1] = (n - i + 1.0) / weight_sum;
      break;
    }
    case CountingMethod::paper_equal:
    case CountingMethod::paper_ordered:
      throw std::invalid_argument(
          "baseline_credits handles literature baselines only; use "
          "equal_credits or ordered_credits for the paper's methods");
  }
  return {method, n, std::move(credits), total};
}

CreditVector credit_vector(CountingMethod method, int n, const ValuationModel& model) {
  switch (method) {
    case CountingMethod::paper_equal: {
      const double per_author = equal_credits(n, model);
      return {method, n, std::vector<double>(static_cast<std::size_t>(n), per_author),
              expected_value(n, model)};
    }
    case CountingMethod::paper_ordered:
      return ordered_credits(n, model);
    default:
      return baseline_credits(method, n);
  }
}

CreditVector scale_to(const CreditVector& cv, const ValuationModel& model) {
  if (!(cv.total > 0.0)) {
    throw std::domain_error("cannot rescale a credit vector with nonpositive total");
  }
  const double target = expected_value(cv.n, model);
  CreditVector out = cv;
  const double factor = target / cv.total;
  for (auto& c : out.credits) c *= factor;
  out.total = target;
  return out;
}

BoundsCheck check_bounds(const std::vector<double>& values) {
  if (values.empty()) {
    throw std::domain_error("check_bounds requires a nonempty value sequence");
  }
  for (std::size_t k = 1; k < values.size(); ++k) {
    const int n = static_cast<int>(k) + 1;
    const double lo = values[k - 1];
    const double hi = lo * n / (n - 1.0);
    if (values[k] < lo || values[k] > hi) return {false, n};
  }
  return {true, 0};
}

double hsu_citation_model(int n) {
  check_author_count(n);
  return std::cbrt(n / 5.0);
}

}  // namespace credit_engine
