#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "test_helpers.hpp"
#include "tvdist/coupling.hpp"
#include "tvdist/oracle.hpp"

using namespace tvdist;
using tvdist::testing::bernoulli_p;
using tvdist::testing::bernoulli_q;
using tvdist::testing::dist;
using tvdist::testing::error_kind_of;

TEST_CASE("build_stats on the two-coordinate Bernoulli instance") {
  const auto stats = build_stats(bernoulli_p(), bernoulli_q());
  // 1 - (1 - 0.3)^2 by hand
  REQUIRE(stats.d.size() == 2);
  CHECK(stats.d[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(stats.d[1] == doctest::Approx(0.3).epsilon(1e-14));
  REQUIRE(stats.suffix.size() == 3);
  CHECK(stats.suffix[0] == doctest::Approx(0.49).epsilon(1e-14));
  CHECK(stats.suffix[1] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(stats.suffix[2] == 1.0);
  CHECK(stats.pr_diff == doctest::Approx(0.51).epsilon(1e-14));
}

TEST_CASE("build_stats edge cases") {
  const auto p = dist({{0.2, 0.8}, {0.5, 0.5}, {0.1, 0.9}});
  const auto same = build_stats(p, p);
  CHECK(same.pr_diff == 0.0);
  CHECK(std::all_of(same.d.begin(), same.d.end(), [](double d) { return d == 0.0; }));

  const auto q = dist({{0.2, 0.8}, {1.0, 0.0}, {0.1, 0.9}});
  const auto r = dist({{0.2, 0.8}, {0.0, 1.0}, {0.1, 0.9}});
  const auto disjoint = build_stats(q, r);
  CHECK(disjoint.d[1] == 1.0);
  CHECK(disjoint.pr_diff == 1.0);
  CHECK(disjoint.log_suffix[0].is_zero());
  CHECK(disjoint.log_suffix[1].is_zero());
  CHECK_FALSE(disjoint.log_suffix[2].is_zero());
  CHECK(disjoint.suffix[0] == 0.0);
  CHECK(disjoint.suffix[2] == 1.0);

  CHECK(error_kind_of([&] { build_stats(p, dist({{1.0}})); }) == ErrorKind::domain_mismatch);
}

TEST_CASE("suffix recurrence and union bounds on random instances") {
  for (const auto& inst : random_instances(1001, 100)) {
    const auto s = build_stats(inst.p, inst.q);
    const std::size_t n = s.dimension();
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::fabs(s.suffix[k] - (1.0 - s.d[k]) * s.suffix[k + 1]) <= 1e-12);
    }
    CHECK(s.suffix[n] == 1.0);
    const double max_d = *std::max_element(s.d.begin(), s.d.end());
    const double sum_d = std::accumulate(s.d.begin(), s.d.end(), 0.0);
    CHECK(s.pr_diff >= 0.0);
    CHECK(s.pr_diff <= 1.0);
    CHECK(s.pr_diff >= max_d * (1 - 1e-12));
    CHECK(s.pr_diff <= std::min(1.0, sum_d) * (1 + 1e-12));
    CHECK((s.pr_diff > 0.0) == !are_identical(inst.p, inst.q));
  }
}

TEST_CASE("tiny coordinate distances keep relative accuracy") {
  // P_i = (1e-12, 0, 1 - 1e-12), Q_i = (0, 1e-12, 1 - 1e-12): d_i is exactly fl(1e-12).
  std::vector<std::vector<double>> p(100, {1e-12, 0.0, 1.0 - 1e-12});
  std::vector<std::vector<double>> q(100, {0.0, 1e-12, 1.0 - 1e-12});
  const auto stats = build_stats(validate(p), validate(q));
  REQUIRE(stats.d[0] == 1e-12);
  const double expected = 100 * 1e-12 * (1 - 49.5e-12);
  CHECK(std::fabs(stats.pr_diff - expected) / expected <= 1e-6);
}

TEST_CASE("conditional_weights follow the sequential formula") {
  const auto p = bernoulli_p();
  const auto q = bernoulli_q();
  const auto stats = build_stats(p, q);

  // w(1) = 0.7 (1 - (0.4/0.7) 0.7) = 0.42, w(2) = 0.3 (1 - 0.7) = 0.09
  const auto first = conditional_weights(0, LogScalar::one(), stats, p[0], q[0]);
  REQUIRE(first.weights.size() == 2);
  CHECK(first.weights[0] == doctest::Approx(0.42).epsilon(1e-14));
  CHECK(first.weights[1] == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(first.normalizer == doctest::Approx(0.51).epsilon(1e-14));
  CHECK(std::fabs(first.weights[0] + first.weights[1] - first.normalizer) <= 1e-12);

  // A_prev = 0: the remaining coordinates follow P.
  const auto forced = conditional_weights(1, LogScalar::zero(), stats, p[1], q[1]);
  CHECK(forced.weights[0] == 0.7);
  CHECK(forced.weights[1] == 0.3);
  CHECK(forced.normalizer == 1.0);

  // P_k(c) = 0 never gets weight.
  const auto a = dist({{0.0, 0.4, 0.6}, {0.5, 0.5}});
  const auto b = dist({{0.3, 0.3, 0.4}, {0.5, 0.5}});
  const auto sw = conditional_weights(0, LogScalar::one(), build_stats(a, b), a[0], b[0]);
  // 0.4 (1 - 0.3/0.4), 0.6 (1 - 0.4/0.6); normalizer d_1 = 0.3
  CHECK(sw.weights[0] == 0.0);
  CHECK(sw.weights[1] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(sw.weights[2] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(sw.normalizer == doctest::Approx(0.3).epsilon(1e-14));

  // No mass left: normalizer 0.
  const auto same = build_stats(p, p);
  CHECK(error_kind_of([&] { conditional_weights(0, LogScalar::one(), same, p[0], p[0]); }) ==
        ErrorKind::degenerate_conditional);
}

namespace {

// Product of normalized conditionals along omega.
double chain_probability(const ProductDistribution& p, const ProductDistribution& q,
                         const GreedyCouplingStats& stats, const Assignment& omega,
                         double& worst_identity_gap) {
  const auto ratios = ratio_tables(p, q);
  LogScalar prefix;
  double prob = 1.0;
  for (std::size_t k = 0; k < omega.size(); ++k) {
    ConditionalWeights cw;
    try {
      cw = conditional_weights(k, prefix, stats, ratios[k]);
    } catch (const Error&) {
      return 0.0;  // an unreachable prefix
    }
    const double total = std::accumulate(cw.weights.begin(), cw.weights.end(), 0.0);
    worst_identity_gap = std::max(worst_identity_gap, std::fabs(total - cw.normalizer));
    prob *= cw.weights[omega[k]] / cw.normalizer;
    if (prob == 0.0) return 0.0;
    prefix *= ratios[k][omega[k]].overlap;
  }
  return prob;
}

}  // namespace

TEST_CASE("conditional chain reproduces exact pi") {
  std::size_t checked = 0;
  double worst_gap = 0.0;
  for (const auto& inst : random_instances(4242, 100)) {
    const auto stats = build_stats(inst.p, inst.q);
    // The linear-space oracle loses relative accuracy when pr_diff is tiny.
    if (stats.pr_diff < 1e-4) continue;
    REQUIRE(inst.p.state_count() <= 4096);
    for (const auto& [omega, exact] : exact_pi(inst.p, inst.q)) {
      const double chained = chain_probability(inst.p, inst.q, stats, omega, worst_gap);
      CHECK(std::fabs(chained - exact) <= 1e-10);
    }
    ++checked;
  }
  CHECK(checked >= 70);
  CHECK(worst_gap <= 1e-12);
}

TEST_CASE("sample_pi") {
  const auto p = bernoulli_p();
  const auto q = bernoulli_q();
  const auto stats = build_stats(p, q);

  SUBCASE("identical distributions are rejected") {
    const auto a = dist({{0.2, 0.8}, {0.6, 0.4}});
    CHECK(error_kind_of([&] { sample_pi(a, a, build_stats(a, a), 1); }) ==
          ErrorKind::identical_distributions);
  }

  SUBCASE("disjoint point masses") {
    const auto a = dist({{1.0, 0.0}});
    const auto b = dist({{0.0, 1.0}});
    const auto s = build_stats(a, b);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      CHECK(sample_pi(a, b, s, seed).values == std::vector<std::size_t>{0});
    }
  }

  SUBCASE("deterministic in the seed") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      CHECK(sample_pi(p, q, stats, seed) == sample_pi(p, q, stats, seed));
    }
  }

  SUBCASE("frequency of omega = (1, 1)") {
    const PiSampler sampler(p, q);
    Rng rng(99);
    Assignment omega;
    std::uint64_t hits = 0;
    constexpr std::uint64_t draws = 1'000'000;
    for (std::uint64_t i = 0; i < draws; ++i) {
      sampler.sample(rng, omega);
      hits += omega.values == std::vector<std::size_t>{0, 0};
    }
    CHECK(std::fabs(static_cast<double>(hits) / draws - 0.33 / 0.51) <= 0.003);
  }

  SUBCASE("diagnostics see every step") {
    const PiSampler sampler(p, q);
    Rng rng(5);
    SamplerDiagnostics diag;
    for (int i = 0; i < 1000; ++i) sampler.sample(rng, &diag);
    CHECK(diag.steps == 2000);
    CHECK(diag.max_normalization_error <= 1e-12);
  }
}
