#pragma once

#include <cassert>
#include <cmath>

namespace tvdist {

// A non-negative number stored as its natural log. Zero is carried by a flag
// rather than by -inf, so long products over coordinates never underflow and
// never produce a sentinel.
class LogScalar {
 public:
  constexpr LogScalar() = default;  // one

  static constexpr LogScalar one() { return LogScalar{}; }
  static constexpr LogScalar zero() {
    LogScalar s;
    s.zero_ = true;
    return s;
  }
  static LogScalar from_log(double log_value) {
    assert(!std::isnan(log_value));
    LogScalar s;
    s.log_ = log_value;
    return s;
  }
  static LogScalar from_linear(double value) {
    assert(value >= 0.0);
    return value == 0.0 ? zero() : from_log(std::log(value));
  }

  // num / den for num >= 0, den > 0. Near 1 the log goes through log1p of the
  // exact difference, which keeps full relative accuracy for nearly-equal
  // probabilities.
  static LogScalar ratio(double num, double den) {
    assert(num >= 0.0 && den > 0.0);
    if (num == 0.0) return zero();
    const double r = num / den;
    if (r > 0.5 && r < 2.0) return from_log(std::log1p((num - den) / den));
    if (std::isnormal(r)) return from_log(std::log(r));
    return from_log(std::log(num) - std::log(den));
  }

  constexpr bool is_zero() const { return zero_; }

  // Only meaningful when !is_zero().
  double log() const {
    assert(!zero_);
    return log_;
  }

  double value() const { return zero_ ? 0.0 : std::exp(log_); }

  // 1 - value(), accurate when value() is close to 1.
  double complement() const { return zero_ ? 1.0 : -std::expm1(log_); }

  LogScalar& operator*=(LogScalar other) {
    if (other.zero_) {
      zero_ = true;
      log_ = 0.0;
    } else if (!zero_) {
      log_ += other.log_;
    }
    return *this;
  }

  friend LogScalar operator*(LogScalar a, LogScalar b) { return a *= b; }

  // min(this, 1)
  LogScalar capped_at_one() const {
    if (zero_ || log_ <= 0.0) return *this;
    return one();
  }

 private:
  bool zero_ = false;
  double log_ = 0.0;
};

}  // namespace tvdist
