#include "tvdist/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "tvdist/error.hpp"
#include "tvdist/rng.hpp"
#include "tvdist/summation.hpp"

namespace tvdist {

void EstimatorConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::invalid_config, "epsilon must be positive and finite");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::invalid_config, "delta must lie in (0, 1)");
  }
  if (samples_override && *samples_override == 0) {
    throw Error(ErrorKind::invalid_config, "sample count must be positive");
  }
  if (workers == 0) {
    throw Error(ErrorKind::invalid_config, "worker count must be positive");
  }
}

std::string_view to_string(EstimateMethod method) noexcept {
  switch (method) {
    case EstimateMethod::greedy_coupling: return "greedy_coupling";
    case EstimateMethod::naive: return "naive";
  }
  return "unknown";
}

std::uint64_t sample_count(std::size_t n, double epsilon, double delta) {
  if (n == 0) throw Error(ErrorKind::invalid_config, "dimension must be positive");
  EstimatorConfig config;
  config.epsilon = epsilon;
  config.delta = delta;
  config.validate();
  // 2 exp(-2 eps^2 m / n^2) <= delta needs delta <= 1/2 to be implied by
  // m >= n^2 / eps^2 * ln(1/delta).
  const double clamped = std::min(delta, 0.5);
  const double nd = static_cast<double>(n);
  const double raw = (nd * nd) / (epsilon * epsilon) * std::log(1.0 / clamped);
  if (!std::isfinite(raw) || raw > 0x1.0p62) {
    throw Error(ErrorKind::invalid_config,
                "derived sample count is too large to represent");
  }
  return static_cast<std::uint64_t>(std::ceil(raw)) + 1;
}

double estimator_f(const std::vector<CoordinateRatios>& ratios,
                   const Assignment& omega) {
  LogScalar likelihood;  // prod Q_i / P_i
  LogScalar overlap;     // prod min(P_i, Q_i) / P_i = Pr_C[X = Y | X = omega]
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const CategoryRatios& entry = ratios[i][omega[i]];
    if (!(entry.p > 0.0)) {
      throw Error(ErrorKind::zero_denominator,
                  "P(omega) = 0 at coordinate " + std::to_string(i + 1) +
                      "; omega is outside the support of pi",
                  i);
    }
    likelihood *= entry.ratio;
    overlap *= entry.overlap;
  }
  const double numerator = likelihood.complement();
  if (numerator <= 0.0) return 0.0;
  const double denominator = overlap.complement();
  if (!(denominator > 0.0)) {
    throw Error(ErrorKind::zero_denominator,
                "Pr_C[X != Y | X = omega] = 0; omega is outside the support of pi");
  }
  const double f = numerator / denominator;
  if (f < -f_range_slack || f > 1.0 + f_range_slack || std::isnan(f)) {
    throw Error(ErrorKind::estimator_out_of_range,
                "estimator value " + std::to_string(f) + " outside [0, 1]");
  }
  return std::clamp(f, 0.0, 1.0);
}

double estimator_f(const ProductDistribution& p, const ProductDistribution& q,
                   const Assignment& omega) {
  check_same_shape(p, q);
  check_assignment(p, omega);
  return estimator_f(ratio_tables(p, q), omega);
}

namespace {

struct BlockOutcome {
  CompensatedSum sum;
  SamplerDiagnostics diagnostics;
};

// draw(rng, count, outcome) consumes `count` samples of one block.
template <class DrawBlock>
std::vector<BlockOutcome> run_blocks(std::uint64_t samples, std::uint64_t seed,
                                     unsigned workers, const DrawBlock& draw) {
  const std::uint64_t blocks = (samples + samples_per_block - 1) / samples_per_block;
  std::vector<BlockOutcome> outcomes(blocks);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t b = begin; b < end; ++b) {
      Rng rng(derive_stream_seed(seed, b));
      const std::uint64_t count =
          std::min(samples_per_block, samples - b * samples_per_block);
      draw(rng, count, outcomes[b]);
    }
  };

  const std::uint64_t threads = std::min<std::uint64_t>(workers, blocks);
  if (threads <= 1) {
    run_range(0, blocks);
    return outcomes;
  }
  std::vector<std::exception_ptr> failures(threads);
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::uint64_t base = blocks / threads;
  const std::uint64_t extra = blocks % threads;
  std::uint64_t begin = 0;
  for (std::uint64_t t = 0; t < threads; ++t) {
    const std::uint64_t end = begin + base + (t < extra ? 1 : 0);
    pool.emplace_back([&, t, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        failures[t] = std::current_exception();
      }
    });
    begin = end;
  }
  pool.clear();  // joins
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return outcomes;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

EstimateResult estimate_tv(const ProductDistribution& p,
                           const ProductDistribution& q,
                           const EstimatorConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  GreedyCouplingStats stats = build_stats(p, q);

  EstimateResult result;
  result.method = EstimateMethod::greedy_coupling;
  result.per_coordinate_tv = stats.d;
  result.pr_diff = stats.pr_diff;
  if (config.diagnostics) result.diagnostics = SamplerDiagnostics{};
  if (are_identical(p, q)) {
    result.elapsed_seconds = elapsed_since(start);
    return result;
  }

  const std::uint64_t m = config.samples_override.value_or(
      sample_count(p.dimension(), config.epsilon, config.delta));
  const PiSampler sampler(p, q, std::move(stats));
  const bool track = config.diagnostics;

  const auto outcomes = run_blocks(
      m, config.seed, config.workers,
      [&](Rng& rng, std::uint64_t count, BlockOutcome& outcome) {
        Assignment omega;
        SamplerDiagnostics* diag = track ? &outcome.diagnostics : nullptr;
        for (std::uint64_t s = 0; s < count; ++s) {
          sampler.sample(rng, omega, diag);
          outcome.sum.add(estimator_f(sampler.ratios(), omega));
        }
      });

  CompensatedSum total;
  SamplerDiagnostics diagnostics;
  for (const auto& outcome : outcomes) {
    total.merge(outcome.sum);
    diagnostics.steps += outcome.diagnostics.steps;
    diagnostics.max_normalization_error =
        std::max(diagnostics.max_normalization_error,
                 outcome.diagnostics.max_normalization_error);
  }
  result.samples_used = m;
  result.mean_f = std::clamp(total.value() / static_cast<double>(m), 0.0, 1.0);
  result.estimate = result.mean_f * result.pr_diff;
  if (track) result.diagnostics = diagnostics;
  result.elapsed_seconds = elapsed_since(start);
  return result;
}

EstimateResult naive_estimate_tv(const ProductDistribution& p,
                                 const ProductDistribution& q,
                                 std::uint64_t samples, std::uint64_t seed,
                                 unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  if (samples == 0) {
    throw Error(ErrorKind::invalid_config, "sample count must be positive");
  }
  if (workers == 0) {
    throw Error(ErrorKind::invalid_config, "worker count must be positive");
  }
  const GreedyCouplingStats stats = build_stats(p, q);
  const auto ratios = ratio_tables(p, q);
  std::vector<double> totals(p.dimension(), 0.0);
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    for (double x : p[i].probs()) totals[i] += x;
  }

  const auto outcomes = run_blocks(
      samples, seed, workers,
      [&](Rng& rng, std::uint64_t count, BlockOutcome& outcome) {
        for (std::uint64_t s = 0; s < count; ++s) {
          LogScalar likelihood;  // Q(omega) / P(omega)
          for (std::size_t i = 0; i < p.dimension(); ++i) {
            const std::size_t c =
                inverse_cdf(p[i].probs(), totals[i], rng.uniform());
            likelihood *= ratios[i][c].ratio;
          }
          outcome.sum.add(std::max(0.0, likelihood.complement()));
        }
      });

  CompensatedSum total;
  for (const auto& outcome : outcomes) total.merge(outcome.sum);

  EstimateResult result;
  result.method = EstimateMethod::naive;
  result.per_coordinate_tv = stats.d;
  result.pr_diff = stats.pr_diff;
  result.samples_used = samples;
  result.mean_f = std::clamp(total.value() / static_cast<double>(samples), 0.0, 1.0);
  result.estimate = result.mean_f;
  result.elapsed_seconds = elapsed_since(start);
  return result;
}

}  // namespace tvdist
