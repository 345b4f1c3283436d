#include "tvdist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tvdist/coupling.hpp"
#include "tvdist/error.hpp"
#include "tvdist/estimator.hpp"
#include "tvdist/rng.hpp"

namespace tvdist {

void check_budget(const ProductDistribution& dist,
                  const EnumerationBudget& budget) {
  const std::uint64_t states = dist.state_count();
  if (states > budget.max_states) {
    throw Error(ErrorKind::budget_exceeded,
                "instance has " + std::to_string(states) +
                    " states, enumeration budget is " +
                    std::to_string(budget.max_states));
  }
}

std::uint64_t state_index(const ProductDistribution& dist,
                          const Assignment& omega) {
  check_assignment(dist, omega);
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    index = index * dist[i].size() + omega[i];
  }
  return index;
}

namespace {

// Point masses of one state, all in linear space.
struct StateMasses {
  double p;        // P(omega)
  double q;        // Q(omega)
  double overlap;  // prod_i min(P_i(omega_i), Q_i(omega_i)) = Pr_C[X = Y = omega]
};

// Odometer over every state in state_index order with prefix products.
template <class Visit>
void for_each_state(const ProductDistribution& p, const ProductDistribution& q,
                    const EnumerationBudget& budget, const Visit& visit) {
  check_same_shape(p, q);
  check_budget(p, budget);
  const std::size_t n = p.dimension();
  Assignment omega;
  omega.values.assign(n, 0);
  std::vector<double> pp(n + 1, 1.0), qq(n + 1, 1.0), mm(n + 1, 1.0);
  auto refresh_from = [&](std::size_t k) {
    for (std::size_t i = k; i < n; ++i) {
      const double a = p[i][omega[i]];
      const double b = q[i][omega[i]];
      pp[i + 1] = pp[i] * a;
      qq[i + 1] = qq[i] * b;
      mm[i + 1] = mm[i] * std::min(a, b);
    }
  };
  refresh_from(0);
  while (true) {
    visit(omega, StateMasses{pp[n], qq[n], mm[n]});
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++omega.values[k] < p[k].size()) break;
      omega.values[k] = 0;
      if (k == 0) return;
    }
    refresh_from(k);
  }
}

}  // namespace

double exact_tv(const ProductDistribution& p, const ProductDistribution& q,
                const EnumerationBudget& budget) {
  double l1 = 0.0;
  for_each_state(p, q, budget, [&](const Assignment&, const StateMasses& s) {
    l1 += std::fabs(s.p - s.q);
  });
  return 0.5 * l1;
}

double exact_sum_positive_part(const ProductDistribution& p,
                               const ProductDistribution& q,
                               const EnumerationBudget& budget) {
  double total = 0.0;
  for_each_state(p, q, budget, [&](const Assignment&, const StateMasses& s) {
    total += std::max(0.0, s.p - s.q);
  });
  return total;
}

double exact_pr_diff(const ProductDistribution& p, const ProductDistribution& q,
                     const EnumerationBudget& budget) {
  double total = 0.0;
  for_each_state(p, q, budget, [&](const Assignment&, const StateMasses& s) {
    total += s.p - s.overlap;
  });
  return total;
}

PiTable exact_pi(const ProductDistribution& p, const ProductDistribution& q,
                 const EnumerationBudget& budget) {
  PiTable table;
  table.reserve(static_cast<std::size_t>(std::min(p.state_count(), budget.max_states)));
  double total = 0.0;
  // Pr_C[X = omega, X != Y] = P(omega) - Pr_C[X = Y = omega]
  for_each_state(p, q, budget, [&](const Assignment& omega, const StateMasses& s) {
    const double mass = s.p - s.overlap;
    table.emplace_back(omega, mass);
    total += mass;
  });
  if (!(total > 0.0)) {
    throw Error(ErrorKind::identical_distributions,
                "P and Q are identical; pi is undefined");
  }
  for (auto& entry : table) entry.second /= total;
  return table;
}

double exact_expectation_f(const ProductDistribution& p,
                           const ProductDistribution& q,
                           const EnumerationBudget& budget) {
  const PiTable pi = exact_pi(p, q, budget);
  const auto ratios = ratio_tables(p, q);
  double expectation = 0.0;
  for (const auto& [omega, mass] : pi) {
    if (mass > 0.0) expectation += mass * estimator_f(ratios, omega);
  }
  return expectation;
}

namespace {

std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng.next_u64() % bound);
}

std::vector<double> normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double x : w) sum += x;
  for (double& x : w) x /= sum;
  return w;
}

// Random probability vector; each category is zeroed with probability
// `zero_rate`, keeping at least one positive entry.
std::vector<double> random_marginal(Rng& rng, std::size_t size,
                                    double zero_rate = 0.0) {
  std::vector<double> w(size);
  for (double& x : w) {
    const double u = rng.uniform();
    x = 0.05 + u * u;
  }
  if (zero_rate > 0.0) {
    const std::size_t keep = uniform_index(rng, size);
    for (std::size_t c = 0; c < size; ++c) {
      if (c != keep && rng.uniform() < zero_rate) w[c] = 0.0;
    }
  }
  return normalized(std::move(w));
}

// Moves a relative amount `eta` of one category's mass to another.
std::vector<double> perturbed(Rng& rng, std::vector<double> w, double eta) {
  std::size_t from = uniform_index(rng, w.size());
  while (w[from] <= 0.0) from = (from + 1) % w.size();
  std::size_t to = (from + 1 + uniform_index(rng, w.size() - 1)) % w.size();
  const double moved = eta * w[from];
  w[from] -= moved;
  w[to] += moved;
  return w;
}

}  // namespace

Instance random_instance(std::uint64_t seed, InstanceKind kind,
                         const RandomInstanceOptions& options) {
  const std::size_t max_n = std::max<std::size_t>(options.max_dimension, 1);
  const std::size_t max_q = std::max<std::size_t>(options.max_domain, 2);
  Rng rng(seed);
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::size_t n = 1 + uniform_index(rng, max_n);
    // At least one coordinate gets q >= 2 so P and Q can differ.
    const std::size_t special = uniform_index(rng, n);
    std::vector<std::vector<double>> p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t size =
          i == special ? 2 + uniform_index(rng, max_q - 1) : 1 + uniform_index(rng, max_q);
      switch (kind) {
        case InstanceKind::generic:
          p[i] = random_marginal(rng, size);
          q[i] = random_marginal(rng, size);
          break;
        case InstanceKind::sparse:
          p[i] = random_marginal(rng, size, 0.4);
          q[i] = random_marginal(rng, size, 0.4);
          break;
        case InstanceKind::near_identical: {
          p[i] = random_marginal(rng, size);
          q[i] = p[i];
          if (size >= 2 && (i == special || rng.uniform() < 0.3)) {
            static constexpr double etas[] = {1e-6, 1e-9, 1e-12};
            q[i] = perturbed(rng, q[i], etas[uniform_index(rng, 3)]);
          }
          break;
        }
        case InstanceKind::disjoint_support: {
          if (i != special) {
            p[i] = random_marginal(rng, size);
            q[i] = random_marginal(rng, size);
            break;
          }
          // Categories [0, cut) carry P, [cut, size) carry Q.
          const std::size_t cut = 1 + uniform_index(rng, size - 1);
          std::vector<double> a(size, 0.0), b(size, 0.0);
          for (std::size_t c = 0; c < size; ++c) {
            (c < cut ? a : b)[c] = 0.05 + rng.uniform();
          }
          p[i] = normalized(std::move(a));
          q[i] = normalized(std::move(b));
          break;
        }
      }
    }
    Instance instance{validate(std::move(p)), validate(std::move(q))};
    if (!are_identical(instance.p, instance.q)) return instance;
    rng = Rng(derive_stream_seed(seed, attempt + 1));
  }
}

std::vector<Instance> random_instances(std::uint64_t seed, std::size_t count,
                                       const RandomInstanceOptions& options) {
  static constexpr InstanceKind cycle[] = {
      InstanceKind::generic, InstanceKind::near_identical,
      InstanceKind::disjoint_support, InstanceKind::sparse};
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(random_instance(derive_stream_seed(seed, j), cycle[j % 4], options));
  }
  return out;
}

}  // namespace tvdist
