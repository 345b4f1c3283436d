#include "tvdist/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tvdist/error.hpp"

namespace tvdist {

GreedyCouplingStats build_stats(const ProductDistribution& p,
                                const ProductDistribution& q) {
  check_same_shape(p, q);
  const std::size_t n = p.dimension();
  GreedyCouplingStats stats;
  stats.d.resize(n);
  stats.log_suffix.assign(n + 1, LogScalar::one());
  stats.suffix.assign(n + 1, 1.0);
  for (std::size_t i = 0; i < n; ++i) stats.d[i] = coordinate_tv(p[i], q[i], i);
  for (std::size_t k = n; k-- > 0;) {
    const double d = stats.d[k];
    const LogScalar keep =
        d >= 1.0 ? LogScalar::zero() : LogScalar::from_log(std::log1p(-d));
    stats.log_suffix[k] = stats.log_suffix[k + 1] * keep;
    stats.suffix[k] = stats.log_suffix[k].value();
  }
  stats.pr_diff = std::clamp(stats.log_suffix[0].complement(), 0.0, 1.0);
  return stats;
}

std::vector<CoordinateRatios> ratio_tables(const ProductDistribution& p,
                                           const ProductDistribution& q) {
  check_same_shape(p, q);
  std::vector<CoordinateRatios> tables(p.dimension());
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    auto& table = tables[i];
    table.resize(p[i].size());
    for (std::size_t c = 0; c < p[i].size(); ++c) {
      auto& entry = table[c];
      entry.p = p[i][c];
      if (entry.p > 0.0) {
        entry.ratio = LogScalar::ratio(q[i][c], entry.p);
        entry.overlap = entry.ratio.capped_at_one();
      }
    }
  }
  return tables;
}

namespace {

[[noreturn]] void throw_degenerate(std::size_t k, double normalizer) {
  throw Error(ErrorKind::degenerate_conditional,
              "conditional at coordinate " + std::to_string(k + 1) +
                  " has non-positive normalizer " + std::to_string(normalizer),
              k);
}

}  // namespace

ConditionalWeights conditional_weights(std::size_t k, LogScalar prefix_ratio,
                                       const GreedyCouplingStats& stats,
                                       const CoordinateRatios& ratios) {
  if (k >= stats.dimension()) {
    throw Error(ErrorKind::index_out_of_range,
                "coordinate " + std::to_string(k + 1) + " out of range");
  }
  ConditionalWeights out;
  out.normalizer = (prefix_ratio * stats.log_suffix[k]).complement();
  if (!(out.normalizer > 0.0)) throw_degenerate(k, out.normalizer);
  const LogScalar tail = prefix_ratio * stats.log_suffix[k + 1];
  out.weights.resize(ratios.size());
  for (std::size_t c = 0; c < ratios.size(); ++c) {
    const auto& entry = ratios[c];
    out.weights[c] =
        entry.p > 0.0 ? entry.p * (tail * entry.overlap).complement() : 0.0;
  }
  return out;
}

ConditionalWeights conditional_weights(std::size_t k, LogScalar prefix_ratio,
                                       const GreedyCouplingStats& stats,
                                       const CategoricalMarginal& p_k,
                                       const CategoricalMarginal& q_k) {
  if (p_k.size() != q_k.size()) {
    throw Error(ErrorKind::domain_mismatch,
                "coordinate " + std::to_string(k + 1) + ": domain sizes differ",
                k);
  }
  CoordinateRatios ratios(p_k.size());
  for (std::size_t c = 0; c < p_k.size(); ++c) {
    ratios[c].p = p_k[c];
    if (p_k[c] > 0.0) {
      ratios[c].ratio = LogScalar::ratio(q_k[c], p_k[c]);
      ratios[c].overlap = ratios[c].ratio.capped_at_one();
    }
  }
  return conditional_weights(k, prefix_ratio, stats, ratios);
}

PiSampler::PiSampler(const ProductDistribution& p, const ProductDistribution& q)
    : PiSampler(p, q, build_stats(p, q)) {}

PiSampler::PiSampler(const ProductDistribution& p, const ProductDistribution& q,
                     GreedyCouplingStats stats)
    : stats_(std::move(stats)), ratios_(ratio_tables(p, q)) {
  if (stats_.dimension() != p.dimension()) {
    throw Error(ErrorKind::domain_mismatch,
                "coupling statistics do not match the distributions");
  }
  if (!(stats_.pr_diff > 0.0)) {
    throw Error(ErrorKind::identical_distributions,
                "P and Q are identical; the conditional law given X != Y is "
                "undefined");
  }
}

void PiSampler::sample(Rng& rng, Assignment& out,
                       SamplerDiagnostics* diagnostics) const {
  const std::size_t n = stats_.dimension();
  out.values.resize(n);
  LogScalar prefix;  // prod_{i<k} r_i(omega_i)
  // The step-k normalizer 1 - A_{k-1} B_k equals w_{k-1}(omega_{k-1}) /
  // P_{k-1}(omega_{k-1}), so it is carried forward instead of recomputed.
  double normalizer = stats_.pr_diff;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(normalizer > 0.0)) throw_degenerate(k, normalizer);
    const CoordinateRatios& table = ratios_[k];
    const LogScalar tail = prefix * stats_.log_suffix[k + 1];

    if (diagnostics != nullptr) {
      const double fresh = (prefix * stats_.log_suffix[k]).complement();
      double total = 0.0;
      for (const auto& entry : table) {
        if (entry.p > 0.0) total += entry.p * (tail * entry.overlap).complement();
      }
      diagnostics->steps += 1;
      diagnostics->max_normalization_error =
          std::max({diagnostics->max_normalization_error,
                    std::fabs(total - fresh), std::fabs(normalizer - fresh)});
    }

    const double target = rng.uniform() * normalizer;
    double cumulative = 0.0;
    std::size_t chosen = table.size();
    std::size_t last_positive = table.size();
    double chosen_rest = 0.0;
    double last_rest = 0.0;
    for (std::size_t c = 0; c < table.size(); ++c) {
      const auto& entry = table[c];
      if (entry.p <= 0.0) continue;
      const double rest = (tail * entry.overlap).complement();
      const double w = entry.p * rest;
      if (w <= 0.0) continue;
      cumulative += w;
      last_positive = c;
      last_rest = rest;
      if (target < cumulative) {
        chosen = c;
        chosen_rest = rest;
        break;
      }
    }
    if (chosen == table.size()) {
      if (last_positive == table.size()) throw_degenerate(k, normalizer);
      chosen = last_positive;
      chosen_rest = last_rest;
    }
    out.values[k] = chosen;
    prefix *= table[chosen].overlap;
    normalizer = chosen_rest;
  }
}

Assignment PiSampler::sample(Rng& rng, SamplerDiagnostics* diagnostics) const {
  Assignment out;
  sample(rng, out, diagnostics);
  return out;
}

Assignment sample_pi(const ProductDistribution& p, const ProductDistribution& q,
                     const GreedyCouplingStats& stats, std::uint64_t seed) {
  const PiSampler sampler(p, q, stats);
  Rng rng(seed);
  return sampler.sample(rng);
}

}  // namespace tvdist
