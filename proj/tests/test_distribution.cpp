#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "tvdist/distribution.hpp"
#include "tvdist/error.hpp"
#include "tvdist/oracle.hpp"
#include "tvdist/rng.hpp"

using namespace tvdist;
using tvdist::testing::dist;
using tvdist::testing::error_kind_of;

TEST_CASE("validate accepts well-formed inputs") {
  const auto one = dist({{0.5, 0.5}});
  CHECK(one.dimension() == 1);
  CHECK(one.domain_sizes() == std::vector<std::size_t>{2});

  const auto mixed = dist({{0.7, 0.3}, {0.25, 0.25, 0.5}});
  CHECK(mixed.dimension() == 2);
  CHECK(mixed.domain_sizes() == std::vector<std::size_t>{2, 3});
  CHECK(mixed.state_count() == 6);

  // stored as given, no renormalization
  const auto loose = dist({{0.5, 0.5 + 5e-10}});
  CHECK(loose[0][1] == 0.5 + 5e-10);
}

TEST_CASE("validate rejects malformed inputs") {
  try {
    validate({{0.7, 0.2}});
    FAIL("expected MarginalNotNormalized");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::marginal_not_normalized);
    CHECK(e.coordinate() == 0);
    CHECK(std::string(e.what()).find("0.9") != std::string::npos);
    CHECK(e.error_class() == ErrorClass::validation);
  }
  try {
    validate({{0.5, 0.5}, {1.2, -0.2}});
    FAIL("expected NegativeProbability");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::negative_probability);
    CHECK(e.coordinate() == 1);
  }
  CHECK(error_kind_of([] { validate({}); }) == ErrorKind::empty_input);
  CHECK(error_kind_of([] { validate({{}}); }) == ErrorKind::empty_input);
  CHECK(error_kind_of([] { validate({{NAN, 1.0}}); }) ==
        ErrorKind::non_finite_probability);
  CHECK(error_kind_of([] { validate({{0.5, 0.5 + 2e-9}}); }) ==
        ErrorKind::marginal_not_normalized);
}

TEST_CASE("point_mass") {
  const auto p = dist({{0.7, 0.3}, {0.4, 0.6}});
  CHECK(point_mass(p, Assignment{{0, 1}}) == doctest::Approx(0.42).epsilon(1e-15));

  const auto degenerate = dist({{1.0, 0.0}, {0.5, 0.5}});
  CHECK(point_mass(degenerate, Assignment{{1, 0}}) == 0.0);
  CHECK(log_point_mass(degenerate, Assignment{{1, 0}}).is_zero());

  const auto same = dist({{0.7, 0.3}, {0.7, 0.3}});
  CHECK(point_mass(same, Assignment{{0, 0}}) == doctest::Approx(0.49).epsilon(1e-15));
  const auto lp = log_point_mass(same, Assignment{{0, 0}});
  REQUIRE_FALSE(lp.is_zero());
  CHECK(lp.log() == doctest::Approx(2 * std::log(0.7)).epsilon(1e-15));

  CHECK(error_kind_of([&] { point_mass(p, Assignment{{0, 2}}); }) ==
        ErrorKind::index_out_of_range);
  CHECK(error_kind_of([&] { point_mass(p, Assignment{{0}}); }) ==
        ErrorKind::index_out_of_range);
}

TEST_CASE("coordinate_tv") {
  auto m = [](std::vector<double> v) { return CategoricalMarginal::validated(std::move(v)); };
  CHECK(coordinate_tv(m({0.5, 0.5}), m({0.5, 0.5})) == 0.0);
  CHECK(coordinate_tv(m({0.7, 0.3}), m({0.4, 0.6})) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(coordinate_tv(m({1.0, 0.0}), m({0.0, 1.0})) == 1.0);
  try {
    coordinate_tv(m({1.0}), m({0.5, 0.5}), 3);
    FAIL("expected DomainMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain_mismatch);
    CHECK(e.coordinate() == 3);
  }
}

TEST_CASE("are_identical compares exactly") {
  const auto p = dist({{0.7, 0.3}, {0.4, 0.6}});
  CHECK(are_identical(p, dist({{0.7, 0.3}, {0.4, 0.6}})));
  CHECK_FALSE(are_identical(dist({{0.7, 0.3}}), dist({{0.7 - 1e-12, 0.3 + 1e-12}})));
  CHECK_FALSE(are_identical(dist({{0.5, 0.5}, {1.0, 0.0}}), dist({{0.5, 0.5}, {0.0, 1.0}})));
  CHECK(error_kind_of([&] { are_identical(p, dist({{0.7, 0.3}})); }) ==
        ErrorKind::domain_mismatch);
}

TEST_CASE("coordinate_tv is symmetric, bounded, and the largest event gap") {
  Rng rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t q = 1 + rng.next_u64() % 10;
    std::vector<double> a(q), b(q);
    double sa = 0, sb = 0;
    for (std::size_t c = 0; c < q; ++c) {
      a[c] = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
      b[c] = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
      sa += a[c];
      sb += b[c];
    }
    if (sa == 0) a[0] = sa = 1;
    if (sb == 0) b[0] = sb = 1;
    for (auto& x : a) x /= sa;
    for (auto& x : b) x /= sb;
    const auto pa = CategoricalMarginal::validated(a);
    const auto pb = CategoricalMarginal::validated(b);
    const double d = coordinate_tv(pa, pb);
    CHECK(d == coordinate_tv(pb, pa));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);

    // max over all 2^q events
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
      double gap = 0.0;
      for (std::size_t c = 0; c < q; ++c) {
        if (mask & (1u << c)) gap += a[c] - b[c];
      }
      best = std::max(best, std::fabs(gap));
    }
    CHECK(d == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("point masses sum to one") {
  for (const auto& inst : random_instances(77, 20)) {
    double total = 0.0;
    tvdist::testing::enumerate_states(inst.p.domain_sizes(), [&](const Assignment& w) {
      total += point_mass(inst.p, w);
    });
    CHECK(std::fabs(total - 1.0) <= 1e-12);
  }
}
