#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tvdist {

enum class ErrorKind {
  empty_input,
  negative_probability,
  non_finite_probability,
  marginal_not_normalized,
  domain_mismatch,
  index_out_of_range,
  invalid_config,
  parse_error,
  identical_distributions,
  io_failure,
  budget_exceeded,
  degenerate_conditional,
  estimator_out_of_range,
  zero_denominator,
};

// Coarse grouping; the CLI turns these into exit codes 2, 3, 4 and 5.
enum class ErrorClass { validation, io, budget, internal };

ErrorClass classify(ErrorKind kind) noexcept;
std::string_view to_string(ErrorKind kind) noexcept;
std::string_view to_string(ErrorClass cls) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> coordinate = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  ErrorClass error_class() const noexcept { return classify(kind_); }

  // Zero-based coordinate the failure refers to, when there is one.
  std::optional<std::size_t> coordinate() const noexcept { return coordinate_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> coordinate_;
};

}  // namespace tvdist
