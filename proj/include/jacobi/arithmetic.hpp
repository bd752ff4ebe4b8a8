#pragma once

// Arithmetic context for the reconstruction engines: native binary floating
// point, or emulation of d significant decimal digits, with optional
// counting of products, quotients and square roots.

#include <cmath>
#include <cstdint>

namespace jacobi {

/// Rounds x to `digits` significant decimal digits, half-to-even on the
/// decimal significand. Computed with a binary carrier, so the result can be
/// off by one ulp of the carrier from the exact decimal rounding.
double round_to_digits(double x, int digits);

/// digits == 0: native double; digits >= 4: every +, -, *, /, sqrt result is
/// rounded to that many significant decimal digits.
struct ScalarMode {
  int digits = 0;

  bool is_native() const noexcept { return digits == 0; }
  /// Validates digits (0 or >= 4, at most 17).
  static ScalarMode with_digits(int digits);
};

/// Counts only multiplications, divisions and square roots.
struct OpCounter {
  std::uint64_t products_and_quotients = 0;
  std::uint64_t square_roots = 0;
};

class Arithmetic {
 public:
  Arithmetic() = default;
  explicit Arithmetic(ScalarMode mode, OpCounter* counter = nullptr)
      : mode_(mode), counter_(counter) {}

  ScalarMode mode() const noexcept { return mode_; }
  OpCounter* counter() const noexcept { return counter_; }

  /// Relative rounding bound of one operation: 0.5 * 10^(1-d), or half the
  /// binary epsilon in native mode.
  double unit_roundoff() const noexcept;

  double round(double x) const { return mode_.digits == 0 ? x : round_to_digits(x, mode_.digits); }

  double add(double x, double y) const { return round(x + y); }
  double sub(double x, double y) const { return round(x - y); }
  double mul(double x, double y) const {
    if (counter_) ++counter_->products_and_quotients;
    return round(x * y);
  }
  double div(double x, double y) const {
    if (counter_) ++counter_->products_and_quotients;
    return round(x / y);
  }
  double sqrt(double x) const {
    if (counter_) ++counter_->square_roots;
    return round(std::sqrt(x));
  }

 private:
  ScalarMode mode_{};
  OpCounter* counter_ = nullptr;
};

/// Shared native, non-counting context.
const Arithmetic& native_arithmetic();

/// A double bound to an Arithmetic context; every operator result goes
/// through the context. Negation, abs and comparisons are exact.
class Real {
 public:
  Real(double v, const Arithmetic& ar) : v_(ar.round(v)), ar_(&ar) {}

  double value() const noexcept { return v_; }
  const Arithmetic& arithmetic() const noexcept { return *ar_; }

  friend Real operator+(Real x, Real y) { return Real(x.ar_->add(x.v_, y.v_), x.ar_, Exact{}); }
  friend Real operator-(Real x, Real y) { return Real(x.ar_->sub(x.v_, y.v_), x.ar_, Exact{}); }
  friend Real operator*(Real x, Real y) { return Real(x.ar_->mul(x.v_, y.v_), x.ar_, Exact{}); }
  friend Real operator/(Real x, Real y) { return Real(x.ar_->div(x.v_, y.v_), x.ar_, Exact{}); }
  friend Real operator-(Real x) { return Real(-x.v_, x.ar_, Exact{}); }

  friend Real operator+(Real x, double y) { return x + Real(y, *x.ar_); }
  friend Real operator-(Real x, double y) { return x - Real(y, *x.ar_); }
  friend Real operator*(Real x, double y) { return x * Real(y, *x.ar_); }
  friend Real operator/(Real x, double y) { return x / Real(y, *x.ar_); }
  friend Real operator+(double x, Real y) { return Real(x, *y.ar_) + y; }
  friend Real operator-(double x, Real y) { return Real(x, *y.ar_) - y; }
  friend Real operator*(double x, Real y) { return Real(x, *y.ar_) * y; }
  friend Real operator/(double x, Real y) { return Real(x, *y.ar_) / y; }

  Real& operator+=(Real y) { return *this = *this + y; }
  Real& operator-=(Real y) { return *this = *this - y; }
  Real& operator*=(Real y) { return *this = *this * y; }
  Real& operator/=(Real y) { return *this = *this / y; }

  friend Real sqrt(Real x) { return Real(x.ar_->sqrt(x.v_), x.ar_, Exact{}); }
  friend Real abs(Real x) { return Real(std::fabs(x.v_), x.ar_, Exact{}); }

  friend bool operator<(Real x, Real y) { return x.v_ < y.v_; }
  friend bool operator>(Real x, Real y) { return x.v_ > y.v_; }
  friend bool operator<=(Real x, Real y) { return x.v_ <= y.v_; }
  friend bool operator>=(Real x, Real y) { return x.v_ >= y.v_; }

 private:
  struct Exact {};
  Real(double v, const Arithmetic* ar, Exact) : v_(v), ar_(ar) {}

  double v_;
  const Arithmetic* ar_;
};

}  // namespace jacobi
