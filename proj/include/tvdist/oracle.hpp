#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "tvdist/distribution.hpp"

namespace tvdist {

// Brute-force ground truth by full enumeration of prod_i q_i states. All
// arithmetic here is plain linear-space products, independent of the
// log-space paths used by the sampler and the estimator.

struct EnumerationBudget {
  std::uint64_t max_states = std::uint64_t{1} << 20;
};

// Throws budget_exceeded if the state count is over the cap.
void check_budget(const ProductDistribution& dist,
                  const EnumerationBudget& budget);

// Row-major position of omega, last coordinate fastest.
std::uint64_t state_index(const ProductDistribution& dist,
                          const Assignment& omega);

double exact_tv(const ProductDistribution& p, const ProductDistribution& q,
                const EnumerationBudget& budget = {});

double exact_sum_positive_part(const ProductDistribution& p,
                               const ProductDistribution& q,
                               const EnumerationBudget& budget = {});

// Pr_C[X != Y] summed state by state.
double exact_pr_diff(const ProductDistribution& p, const ProductDistribution& q,
                     const EnumerationBudget& budget = {});

using PiTable = std::vector<std::pair<Assignment, double>>;

// pi(omega) = P(omega) (1 - prod_i r_i(omega_i)) / Pr_C[X != Y] for every
// state, in state_index order. Throws identical_distributions.
PiTable exact_pi(const ProductDistribution& p, const ProductDistribution& q,
                 const EnumerationBudget& budget = {});

// sum over the support of pi of pi(omega) * estimator_f(omega).
double exact_expectation_f(const ProductDistribution& p,
                           const ProductDistribution& q,
                           const EnumerationBudget& budget = {});

struct Instance {
  ProductDistribution p;
  ProductDistribution q;
};

enum class InstanceKind { generic, near_identical, disjoint_support, sparse };

struct RandomInstanceOptions {
  std::size_t max_dimension = 6;
  std::size_t max_domain = 4;
};

// Seeded generator for property suites. Never returns identical P and Q.
Instance random_instance(std::uint64_t seed, InstanceKind kind,
                         const RandomInstanceOptions& options = {});

// `count` instances; kind cycles generic, near_identical, disjoint_support,
// sparse, and instance j uses derive_stream_seed(seed, j).
std::vector<Instance> random_instances(std::uint64_t seed, std::size_t count,
                                       const RandomInstanceOptions& options = {});

}  // namespace tvdist
