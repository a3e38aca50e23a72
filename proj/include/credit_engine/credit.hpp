#pragma once

// Closed-form publication values and author credit allocations for n-author
// publications, plus the counting-method baselines from the bibliometrics
// literature.

#include <string_view>
#include <vector>

namespace credit_engine {

// Hard cap on author counts accepted by the public interface; beyond this,
// per-author credits are hyper-authorship territory the model does not cover.
inline constexpr int kMaxAuthorCount = 1'000'000;

enum class CountingMethod {
  paper_equal,    // equally important authors: each gets v_n / n
  paper_ordered,  // v_n split over ranked authors by harmonic-suffix shares
  full,           // every author receives the whole publication value
  fractional,     // one credit unit split equally
  arithmetic,     // weights n-i+1, normalized to one
  geometric,      // weights 2^(n-i), normalized to one
  harmonic,       // weights 1/i, normalized to one
};

// Closed enumeration: unknown names are rejected.
CountingMethod parse_counting_method(std::string_view name);
std::string_view to_string(CountingMethod method);

// Value of a single-author publication, the unit every expected value and
// credit is expressed in.
struct ValuationModel {
  double base_value = 1.0;
};

struct CreditVector {
  CountingMethod method = CountingMethod::fractional;
  int n = 0;
  std::vector<double> credits;  // per-author share, first author first
  double total = 0.0;           // publication value under this method
};

struct BoundsCheck {
  bool ok = true;
  int first_violation = 0;  // smallest n (>= 2) violating the bounds, 0 if ok
};

// Expected value of an n-author publication: 2n/(n+1) * base_value.
double expected_value(int n, const ValuationModel& model = {});

// Per-author credits when all authors are equally important: expected_value / n.
double equal_credits(int n, const ValuationModel& model = {});

// One step of the recursion v_n = n^2 / ((n-1)(n+1)) * v_{n-1}.
double recursion_step(double v_prev, int n);

// Credits of ranked authors: expected_value(n) times the share
// s_i = (1/n) * sum_{j=i..n} 1/j.
CreditVector ordered_credits(int n, const ValuationModel& model = {});

// Literature baselines (full, fractional, arithmetic, geometric, harmonic).
// Full counting totals n; the others are normalized to total one. Passing a
// paper_* method here is an error: use equal_credits / ordered_credits.
CreditVector baseline_credits(CountingMethod method, int n);

// Any method as a CreditVector; dispatches to the operations above.
CreditVector credit_vector(CountingMethod method, int n, const ValuationModel& model = {});

// Rescale a credit vector so its total equals expected_value(n, model).
CreditVector scale_to(const CreditVector& cv, const ValuationModel& model);

// Verify v_{n-1} <= v_n <= n/(n-1) * v_{n-1} along a value sequence, where
// values[k] is the value for n = k+1. Reports the smallest violating n.
BoundsCheck check_bounds(const std::vector<double>& values);

// Empirical citations-per-authors curve (n/5)^(1/3).
double hsu_citation_model(int n);

}  // namespace credit_engine
