#include "tvdist/distribution.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tvdist/error.hpp"

namespace tvdist {

namespace {

// Messages use one-based coordinates and categories.
std::string coordinate_label(std::size_t i) {
  return "coordinate " + std::to_string(i + 1);
}

}  // namespace

CategoricalMarginal CategoricalMarginal::validated(std::vector<double> probs,
                                                   std::size_t coordinate) {
  if (probs.empty()) {
    throw Error(ErrorKind::empty_input,
                coordinate_label(coordinate) + " has an empty domain",
                coordinate);
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < probs.size(); ++c) {
    if (!std::isfinite(probs[c])) {
      throw Error(ErrorKind::non_finite_probability,
                  coordinate_label(coordinate) + ", category " +
                      std::to_string(c + 1) + ": probability is not finite",
                  coordinate);
    }
    if (probs[c] < 0.0) {
      std::ostringstream msg;
      msg << coordinate_label(coordinate) << ", category " << c + 1
          << ": negative probability " << probs[c];
      throw Error(ErrorKind::negative_probability, msg.str(), coordinate);
    }
    sum += probs[c];
  }
  if (std::fabs(sum - 1.0) > normalization_tolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << coordinate_label(coordinate) << ": probabilities sum to " << sum;
    throw Error(ErrorKind::marginal_not_normalized, msg.str(), coordinate);
  }
  return CategoricalMarginal(std::move(probs));
}

ProductDistribution::ProductDistribution(
    std::vector<CategoricalMarginal> marginals)
    : marginals_(std::move(marginals)) {
  if (marginals_.empty()) {
    throw Error(ErrorKind::empty_input,
                "a product distribution needs at least one coordinate");
  }
}

std::vector<std::size_t> ProductDistribution::domain_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(marginals_.size());
  for (const auto& m : marginals_) sizes.push_back(m.size());
  return sizes;
}

std::uint64_t ProductDistribution::state_count() const {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (const auto& m : marginals_) {
    if (count > cap / m.size()) return cap;
    count *= m.size();
  }
  return count;
}

std::vector<std::vector<double>> ProductDistribution::to_raw() const {
  std::vector<std::vector<double>> raw;
  raw.reserve(marginals_.size());
  for (const auto& m : marginals_) raw.emplace_back(m.probs().begin(), m.probs().end());
  return raw;
}

ProductDistribution validate(std::vector<std::vector<double>> raw) {
  if (raw.empty()) {
    throw Error(ErrorKind::empty_input,
                "a product distribution needs at least one coordinate");
  }
  std::vector<CategoricalMarginal> marginals;
  marginals.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    marginals.push_back(CategoricalMarginal::validated(std::move(raw[i]), i));
  }
  return ProductDistribution(std::move(marginals));
}

void check_assignment(const ProductDistribution& dist,
                      const Assignment& omega) {
  if (omega.size() != dist.dimension()) {
    throw Error(ErrorKind::index_out_of_range,
                "assignment has " + std::to_string(omega.size()) +
                    " coordinates, distribution has " +
                    std::to_string(dist.dimension()));
  }
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (omega[i] >= dist[i].size()) {
      throw Error(ErrorKind::index_out_of_range,
                  coordinate_label(i) + ": category " +
                      std::to_string(omega[i] + 1) + " outside domain of size " +
                      std::to_string(dist[i].size()),
                  i);
    }
  }
}

void check_same_shape(const ProductDistribution& p,
                      const ProductDistribution& q) {
  if (p.dimension() != q.dimension()) {
    throw Error(ErrorKind::domain_mismatch,
                "P has " + std::to_string(p.dimension()) +
                    " coordinates, Q has " + std::to_string(q.dimension()));
  }
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (p[i].size() != q[i].size()) {
      throw Error(ErrorKind::domain_mismatch,
                  coordinate_label(i) + ": domain sizes " +
                      std::to_string(p[i].size()) + " and " +
                      std::to_string(q[i].size()) + " differ",
                  i);
    }
  }
}

double point_mass(const ProductDistribution& dist, const Assignment& omega) {
  check_assignment(dist, omega);
  double mass = 1.0;
  for (std::size_t i = 0; i < omega.size(); ++i) mass *= dist[i][omega[i]];
  return mass;
}

LogScalar log_point_mass(const ProductDistribution& dist,
                         const Assignment& omega) {
  check_assignment(dist, omega);
  LogScalar mass;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    mass *= LogScalar::from_linear(dist[i][omega[i]]);
  }
  return mass;
}

double coordinate_tv(const CategoricalMarginal& p, const CategoricalMarginal& q,
                     std::size_t coordinate) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::domain_mismatch,
                coordinate_label(coordinate) + ": domain sizes " +
                    std::to_string(p.size()) + " and " +
                    std::to_string(q.size()) + " differ",
                coordinate);
  }
  double l1 = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) l1 += std::fabs(p[c] - q[c]);
  // Inputs are only normalized to within 1e-9.
  return std::min(0.5 * l1, 1.0);
}

bool are_identical(const ProductDistribution& p, const ProductDistribution& q) {
  check_same_shape(p, q);
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (coordinate_tv(p[i], q[i], i) != 0.0) return false;
  }
  return true;
}

}  // namespace tvdist
