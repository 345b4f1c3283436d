#include "tvdist/error.hpp"

namespace tvdist {

ErrorClass classify(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io_failure:
      return ErrorClass::io;
    case ErrorKind::budget_exceeded:
      return ErrorClass::budget;
    case ErrorKind::degenerate_conditional:
    case ErrorKind::estimator_out_of_range:
    case ErrorKind::zero_denominator:
      return ErrorClass::internal;
    default:
      return ErrorClass::validation;
  }
}

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::empty_input: return "EmptyInput";
    case ErrorKind::negative_probability: return "NegativeProbability";
    case ErrorKind::non_finite_probability: return "NonFiniteProbability";
    case ErrorKind::marginal_not_normalized: return "MarginalNotNormalized";
    case ErrorKind::domain_mismatch: return "DomainMismatch";
    case ErrorKind::index_out_of_range: return "IndexOutOfRange";
    case ErrorKind::invalid_config: return "InvalidConfig";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::identical_distributions: return "IdenticalDistributions";
    case ErrorKind::io_failure: return "IoFailure";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::degenerate_conditional: return "DegenerateConditional";
    case ErrorKind::estimator_out_of_range: return "EstimatorOutOfRange";
    case ErrorKind::zero_denominator: return "ZeroDenominator";
  }
  return "Unknown";
}

std::string_view to_string(ErrorClass cls) noexcept {
  switch (cls) {
    case ErrorClass::validation: return "validation";
    case ErrorClass::io: return "io";
    case ErrorClass::budget: return "budget";
    case ErrorClass::internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> coordinate)
    : std::runtime_error(message), kind_(kind), coordinate_(coordinate) {}

}  // namespace tvdist
