#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tvdist/coupling.hpp"
#include "tvdist/distribution.hpp"

namespace tvdist {

struct EstimatorConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> samples_override;
  unsigned workers = 1;
  // Track the conditional-weight normalization identity at every step.
  bool diagnostics = false;

  // Throws invalid_config.
  void validate() const;
};

enum class EstimateMethod { greedy_coupling, naive };

std::string_view to_string(EstimateMethod method) noexcept;

struct EstimateResult {
  EstimateMethod method = EstimateMethod::greedy_coupling;
  double estimate = 0.0;
  double mean_f = 0.0;
  std::uint64_t samples_used = 0;
  // For greedy_coupling, estimate == mean_f * pr_diff as computed. For naive,
  // pr_diff is informational and estimate == mean_f.
  double pr_diff = 0.0;
  std::vector<double> per_coordinate_tv;
  double elapsed_seconds = 0.0;
  // Filled only when EstimatorConfig::diagnostics is set.
  std::optional<SamplerDiagnostics> diagnostics;

  friend bool operator==(const EstimateResult&, const EstimateResult&) = default;
};

// Draws are grouped into fixed blocks of this many samples; block b uses the
// generator seeded with derive_stream_seed(seed, b). Workers take contiguous
// ranges of blocks, and block sums are merged in block order, so the result
// does not depend on the worker count.
inline constexpr std::uint64_t samples_per_block = 4096;

// Slack allowed on f's range [0, 1] before a value is treated as a bug.
inline constexpr double f_range_slack = 1e-12;

// ceil(n^2 / eps^2 * ln(1 / min(delta, 1/2))) + 1.
std::uint64_t sample_count(std::size_t n, double epsilon, double delta);

// f(omega) = max{0, P(omega) - Q(omega)} / Pr_C[X = omega, X != Y]
//          = max{0, (1 - prod Q_i/P_i) / (1 - prod min(P_i, Q_i)/P_i)}
// Requires pi(omega) > 0. Throws zero_denominator when omega is outside the
// support of pi, estimator_out_of_range on a range excursion beyond
// f_range_slack.
double estimator_f(const ProductDistribution& p, const ProductDistribution& q,
                   const Assignment& omega);
double estimator_f(const std::vector<CoordinateRatios>& ratios,
                   const Assignment& omega);

// Importance-sampling estimate of TV(P, Q) through pi.
EstimateResult estimate_tv(const ProductDistribution& p,
                           const ProductDistribution& q,
                           const EstimatorConfig& config);

// Baseline: mean of max{0, 1 - Q(omega)/P(omega)} over omega ~ P.
EstimateResult naive_estimate_tv(const ProductDistribution& p,
                                 const ProductDistribution& q,
                                 std::uint64_t samples, std::uint64_t seed,
                                 unsigned workers = 1);

}  // namespace tvdist
