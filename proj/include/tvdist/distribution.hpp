#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tvdist/log_scalar.hpp"

namespace tvdist {

// Admissible |sum - 1| for an input probability vector.
inline constexpr double normalization_tolerance = 1e-9;

// A probability vector over {0, ..., q-1}. Stored exactly as given.
class CategoricalMarginal {
 public:
  // Throws Error (empty_input, negative_probability, non_finite_probability,
  // marginal_not_normalized). `coordinate` is only used in the error.
  static CategoricalMarginal validated(std::vector<double> probs,
                                       std::size_t coordinate = 0);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t c) const { return probs_[c]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const CategoricalMarginal&,
                         const CategoricalMarginal&) = default;

 private:
  explicit CategoricalMarginal(std::vector<double> probs)
      : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Product of n >= 1 independent categorical marginals; domain sizes may
// differ per coordinate.
class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<CategoricalMarginal> marginals);

  std::size_t dimension() const { return marginals_.size(); }
  const CategoricalMarginal& marginal(std::size_t i) const {
    return marginals_[i];
  }
  const CategoricalMarginal& operator[](std::size_t i) const {
    return marginals_[i];
  }
  std::span<const CategoricalMarginal> marginals() const { return marginals_; }
  std::vector<std::size_t> domain_sizes() const;

  // prod_i q_i, saturating at UINT64_MAX.
  std::uint64_t state_count() const;

  std::vector<std::vector<double>> to_raw() const;

  friend bool operator==(const ProductDistribution&,
                         const ProductDistribution&) = default;

 private:
  std::vector<CategoricalMarginal> marginals_;
};

// One outcome; values[i] is a zero-based category index of coordinate i.
struct Assignment {
  std::vector<std::size_t> values;

  std::size_t size() const { return values.size(); }
  std::size_t operator[](std::size_t i) const { return values[i]; }

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

ProductDistribution validate(std::vector<std::vector<double>> raw);

// Throws index_out_of_range when the assignment does not fit `dist`.
void check_assignment(const ProductDistribution& dist, const Assignment& omega);

// Throws domain_mismatch naming the first coordinate whose sizes differ.
void check_same_shape(const ProductDistribution& p,
                      const ProductDistribution& q);

double point_mass(const ProductDistribution& dist, const Assignment& omega);
LogScalar log_point_mass(const ProductDistribution& dist,
                         const Assignment& omega);

// Half the L1 distance between two marginals on the same domain.
double coordinate_tv(const CategoricalMarginal& p, const CategoricalMarginal& q,
                     std::size_t coordinate = 0);

// Exact comparison: true iff every coordinate TV is exactly 0.
bool are_identical(const ProductDistribution& p, const ProductDistribution& q);

}  // namespace tvdist
