#pragma once

// Monte Carlo estimation of the n-author publication value from the effort
// axioms: per-author efforts are i.i.d. uniform on [0, c_{n-1}], conditioned
// on the aggregate effort reaching the (n-1)-author value v_{n-1}.
//
// Two samplers cover the conditioning event. The rejection sampler draws on
// the cube and retries until the aggregate clears the threshold; its
// acceptance probability is 1/n!, so it is only allowed for small n. The
// simplex-complement sampler is exact and never rejects: spacings of sorted
// uniforms are a uniform draw w from the corner simplex {w >= 0, sum w <= 1},
// and e_i = c_{n-1} * (1 - w_i) is a volume-preserving map of that simplex
// onto the feasible effort region.

#include <cstdint>
#include <string_view>
#include <vector>

#include "credit_engine/rng.hpp"

namespace credit_engine::sim {

enum class Sampler { rejection, simplex_complement };
enum class ChainMode { verify_each_step, full_chain };

Sampler parse_sampler(std::string_view name);
std::string_view to_string(Sampler sampler);

inline constexpr std::int64_t kMinSamples = 1000;
inline constexpr int kMaxRejectionAuthors = 8;

struct EffortProfile {
  int n = 0;
  std::vector<double> efforts;
  double upper_bound = 0.0;  // c_{n-1} = v_prev / (n-1), per-author cap
  double threshold = 0.0;    // v_prev, minimum aggregate effort
  bool feasible = false;
};

struct SimulationResult {
  int n = 0;
  std::int64_t samples_accepted = 0;
  std::int64_t samples_drawn = 0;  // equals samples_accepted in simplex mode
  double estimate = 0.0;
  double standard_error = 0.0;
  double acceptance_rate = 0.0;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::simplex_complement;
};

// One effort profile uniform on {e in [0, v_prev/(n-1)]^n : sum e >= v_prev}.
// Rejection mode is limited to n <= kMaxRejectionAuthors.
EffortProfile sample_feasible_profile(int n, double v_prev, RngStream& rng,
                                      Sampler sampler = Sampler::simplex_complement);

// Exact probability that an unconditioned uniform draw is feasible: 1/n!.
// Underflows to zero past n = 170 and reports that as an error.
double acceptance_probability(int n);

// Feasible profiles among `draws` unconditioned cube draws (one substream
// per draw, so the count is independent of call context).
std::int64_t count_feasible(int n, double v_prev, std::int64_t draws, std::uint64_t seed);

// Mean aggregate effort over `samples` feasible profiles. Fixed
// (n, v_prev, samples, seed, sampler) give bit-identical results for any
// `threads` (0 = hardware concurrency): sample k always uses substream k and
// partial sums are reduced over fixed chunk boundaries in index order.
SimulationResult estimate_vn(int n, double v_prev, std::int64_t samples,
                             std::uint64_t seed, Sampler sampler, int threads = 0);

// estimate_vn for n = 2..n_max. verify_each_step feeds every step the
// closed-form v_{n-1} derived from v1; full_chain feeds the previous
// estimate, compounding the Monte Carlo error.
std::vector<SimulationResult> chain_estimate(int n_max, std::int64_t samples_per_step,
                                             std::uint64_t seed, Sampler sampler,
                                             ChainMode mode = ChainMode::verify_each_step,
                                             double v1 = 1.0, int threads = 0);

}  // namespace credit_engine::sim
