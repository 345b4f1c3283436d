#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tvdist/distribution.hpp"
#include "tvdist/log_scalar.hpp"
#include "tvdist/rng.hpp"

namespace tvdist {

// Aggregate quantities of the coordinate-wise greedy coupling C, in which each
// pair (P_i, Q_i) is coupled optimally and independently.
struct GreedyCouplingStats {
  std::vector<double> d;             // d_i = TV(P_i, Q_i)
  std::vector<LogScalar> log_suffix;  // [k] = prod_{i >= k} (1 - d_i), k = 0..n
  std::vector<double> suffix;        // log_suffix materialized
  double pr_diff = 0.0;              // Pr_C[X != Y] = 1 - suffix[0]

  std::size_t dimension() const { return d.size(); }
};

GreedyCouplingStats build_stats(const ProductDistribution& p,
                                const ProductDistribution& q);

// Per-category ratios shared by the sampler and the estimator.
struct CategoryRatios {
  double p = 0.0;     // P_k(c)
  LogScalar ratio;    // Q_k(c) / P_k(c); unused when p == 0
  LogScalar overlap;  // r_k(c) = min(P_k(c), Q_k(c)) / P_k(c); one when p == 0
};

using CoordinateRatios = std::vector<CategoryRatios>;

std::vector<CoordinateRatios> ratio_tables(const ProductDistribution& p,
                                           const ProductDistribution& q);

struct ConditionalWeights {
  std::vector<double> weights;  // unnormalized, one per category
  double normalizer = 0.0;      // 1 - A_prev * suffix[k]
};

// Weights of coordinate k (zero-based) given the running prefix ratio
// A_prev = prod_{i<k} r_i(omega_i):
//   w(c) = P_k(c) * (1 - A_prev * r_k(c) * suffix[k+1]).
// They sum to 1 - A_prev * suffix[k]. Throws degenerate_conditional when that
// normalizer is not positive.
ConditionalWeights conditional_weights(std::size_t k, LogScalar prefix_ratio,
                                       const GreedyCouplingStats& stats,
                                       const CoordinateRatios& ratios);
ConditionalWeights conditional_weights(std::size_t k, LogScalar prefix_ratio,
                                       const GreedyCouplingStats& stats,
                                       const CategoricalMarginal& p_k,
                                       const CategoricalMarginal& q_k);

// Collected only when a diagnostics sink is passed to the sampler.
struct SamplerDiagnostics {
  std::uint64_t steps = 0;
  // max |sum_c w(c) - normalizer| over all steps seen
  double max_normalization_error = 0.0;

  friend bool operator==(const SamplerDiagnostics&,
                         const SamplerDiagnostics&) = default;
};

// Draws exactly from pi(omega) = Pr_C[X = omega | X != Y], one coordinate at a
// time, in O(sum_i q_i) per sample.
class PiSampler {
 public:
  // Throws identical_distributions when Pr_C[X != Y] = 0.
  PiSampler(const ProductDistribution& p, const ProductDistribution& q);
  PiSampler(const ProductDistribution& p, const ProductDistribution& q,
            GreedyCouplingStats stats);

  const GreedyCouplingStats& stats() const { return stats_; }
  const std::vector<CoordinateRatios>& ratios() const { return ratios_; }

  // `out` is resized to n; reusing it across calls avoids reallocation.
  // Throws degenerate_conditional if a reached prefix has no remaining mass,
  // which would mean an internal inconsistency.
  void sample(Rng& rng, Assignment& out,
              SamplerDiagnostics* diagnostics = nullptr) const;
  Assignment sample(Rng& rng, SamplerDiagnostics* diagnostics = nullptr) const;

 private:
  GreedyCouplingStats stats_;
  std::vector<CoordinateRatios> ratios_;
  std::size_t max_domain_ = 0;
};

// One draw from pi with a fresh generator seeded by `seed`.
Assignment sample_pi(const ProductDistribution& p, const ProductDistribution& q,
                     const GreedyCouplingStats& stats, std::uint64_t seed);

}  // namespace tvdist
