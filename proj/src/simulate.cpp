#include "credit_engine/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "credit_engine/credit.hpp"

namespace credit_engine::sim {

namespace {

// Chunk of sample indices reduced as one unit. Fixed regardless of thread
// count so the final left-to-right reduction is bit-stable.
constexpr std::int64_t kChunkSamples = 8192;

void check_common(int n, double v_prev) {
  if (n < 2) {
    throw std::domain_error("simulation requires n >= 2, got " + std::to_string(n));
  }
  if (n > kMaxAuthorCount) {
    throw std::range_error("author count " + std::to_string(n) +
                           " exceeds the supported maximum " +
                           std::to_string(kMaxAuthorCount));
  }
  if (!(v_prev > 0.0)) {
    throw std::domain_error("v_prev must be positive");
  }
}

void check_rejection_allowed(int n) {
  if (n > kMaxRejectionAuthors) {
    throw std::domain_error(
        "rejection sampling is limited to n <= " + std::to_string(kMaxRejectionAuthors) +
        ": the acceptance rate is 1/n!, hopeless for n = " + std::to_string(n) +
        "; use the simplex_complement sampler");
  }
}

// Uniform draw from the feasible region via the simplex complement:
// spacings of n sorted uniforms are uniform on {w >= 0, sum w <= 1}, and
// e_i = cap * (1 - w_i) maps that simplex onto the feasible region. Returns
// the aggregate effort.
double draw_simplex_complement(int n, double cap, RngStream& rng, double* efforts,
                               double* scratch) {
  for (int i = 0; i < n; ++i) scratch[i] = rng.next_double();
  std::sort(scratch, scratch + n);
  double prev = 0.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double spacing = scratch[i] - prev;
    prev = scratch[i];
    efforts[i] = cap * (1.0 - spacing);
    sum += efforts[i];
  }
  return sum;
}

// One unconditioned draw on the cube [0, cap]^n; returns the aggregate.
double draw_cube(int n, double cap, RngStream& rng, double* efforts) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    efforts[i] = cap * rng.next_double();
    sum += efforts[i];
  }
  return sum;
}

struct Partial {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t drawn = 0;
};

}  // namespace

Sampler parse_sampler(std::string_view name) {
  if (name == "rejection") return Sampler::rejection;
  if (name == "simplex" || name == "simplex_complement") return Sampler::simplex_complement;
  throw std::invalid_argument("unknown sampler: " + std::string(name));
}

std::string_view to_string(Sampler sampler) {
  switch (sampler) {
    case Sampler::rejection: return "rejection";
    case Sampler::simplex_complement: return "simplex_complement";
  }
  throw std::invalid_argument("invalid sampler value");
}

EffortProfile sample_feasible_profile(int n, double v_prev, RngStream& rng, Sampler sampler) {
  check_common(n, v_prev);
  const double cap = v_prev / (n - 1);
  EffortProfile profile;
  profile.n = n;
  profile.upper_bound = cap;
  profile.threshold = v_prev;
  profile.efforts.resize(static_cast<std::size_t>(n));
  double sum = 0.0;
  if (sampler == Sampler::simplex_complement) {
    std::vector<double> scratch(static_cast<std::size_t>(n));
    sum = draw_simplex_complement(n, cap, rng, profile.efforts.data(), scratch.data());
  } else {
    check_rejection_allowed(n);
    do {
      sum = draw_cube(n, cap, rng, profile.efforts.data());
    } while (sum < v_prev);
  }
  profile.feasible = sum >= v_prev;
  return profile;
}

double acceptance_probability(int n) {
  check_common(n, 1.0);
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) {
    factorial *= k;
    if (std::isinf(factorial)) break;
  }
  const double p = 1.0 / factorial;
  if (p == 0.0) {
    throw std::underflow_error("1/n! underflows double precision for n = " +
                               std::to_string(n));
  }
  return p;
}

std::int64_t count_feasible(int n, double v_prev, std::int64_t draws, std::uint64_t seed) {
  check_common(n, v_prev);
  if (draws < 1) throw std::domain_error("draws must be >= 1");
  const double cap = v_prev / (n - 1);
  std::vector<double> efforts(static_cast<std::size_t>(n));
  std::int64_t feasible = 0;
  for (std::int64_t k = 0; k < draws; ++k) {
    RngStream rng = substream(seed, static_cast<std::uint64_t>(k));
    if (draw_cube(n, cap, rng, efforts.data()) >= v_prev) ++feasible;
  }
  return feasible;
}

SimulationResult estimate_vn(int n, double v_prev, std::int64_t samples,
                             std::uint64_t seed, Sampler sampler, int threads) {
  check_common(n, v_prev);
  if (samples < kMinSamples) {
    throw std::domain_error("at least " + std::to_string(kMinSamples) +
                            " samples required, got " + std::to_string(samples));
  }
  if (sampler == Sampler::rejection) check_rejection_allowed(n);

  const double cap = v_prev / (n - 1);
  const std::int64_t chunk_count = (samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<Partial> partials(static_cast<std::size_t>(chunk_count));

  std::atomic<std::int64_t> next_chunk{0};
  auto worker = [&] {
    std::vector<double> efforts(static_cast<std::size_t>(n));
    std::vector<double> scratch(static_cast<std::size_t>(n));
    for (;;) {
      const std::int64_t c = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunk_count) break;
      const std::int64_t begin = c * kChunkSamples;
      const std::int64_t end = std::min(samples, begin + kChunkSamples);
      Partial part;
      for (std::int64_t k = begin; k < end; ++k) {
        RngStream rng = substream(seed, static_cast<std::uint64_t>(k));
        double sum;
        if (sampler == Sampler::simplex_complement) {
          sum = draw_simplex_complement(n, cap, rng, efforts.data(), scratch.data());
          ++part.drawn;
        } else {
          do {
            sum = draw_cube(n, cap, rng, efforts.data());
            ++part.drawn;
          } while (sum < v_prev);
        }
        part.sum += sum;
        part.sum_sq += sum * sum;
      }
      partials[static_cast<std::size_t>(c)] = part;
    }
  };

  int worker_count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  worker_count = std::clamp<int>(worker_count, 1, static_cast<int>(std::min<std::int64_t>(chunk_count, 64)));
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int t = 0; t < worker_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t drawn = 0;
  for (const auto& part : partials) {
    sum += part.sum;
    sum_sq += part.sum_sq;
    drawn += part.drawn;
  }

  SimulationResult result;
  result.n = n;
  result.samples_accepted = samples;
  result.samples_drawn = drawn;
  result.seed = seed;
  result.sampler = sampler;
  result.estimate = sum / static_cast<double>(samples);
  const double variance =
      std::max(0.0, (sum_sq - sum * sum / static_cast<double>(samples)) /
                        static_cast<double>(samples - 1));
  result.standard_error = std::sqrt(variance / static_cast<double>(samples));
  result.acceptance_rate = sampler == Sampler::simplex_complement
                               ? 1.0
                               : static_cast<double>(samples) / static_cast<double>(drawn);
  return result;
}

std::vector<SimulationResult> chain_estimate(int n_max, std::int64_t samples_per_step,
                                             std::uint64_t seed, Sampler sampler,
                                             ChainMode mode, double v1, int threads) {
  if (n_max < 2) {
    throw std::domain_error("chain requires n_max >= 2, got " + std::to_string(n_max));
  }
  if (!(v1 > 0.0)) throw std::domain_error("v1 must be positive");

  std::vector<SimulationResult> results;
  results.reserve(static_cast<std::size_t>(n_max) - 1);
  double v_prev = v1;
  for (int n = 2; n <= n_max; ++n) {
    if (mode == ChainMode::verify_each_step) {
      v_prev = expected_value(n - 1, {v1});
    }
    results.push_back(estimate_vn(n, v_prev, samples_per_step, seed, sampler, threads));
    if (mode == ChainMode::full_chain) {
      v_prev = results.back().estimate;
    }
  }
  return results;
}

}  // namespace credit_engine::sim
