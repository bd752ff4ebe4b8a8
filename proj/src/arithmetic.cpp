#include "jacobi/arithmetic.hpp"

#include <array>
#include <limits>
#include <string>

#include "jacobi/core.hpp"

namespace jacobi {
namespace {

// Powers of ten that are exact in binary64.
constexpr std::array<double, 23> kPow10 = {
    1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,  1e8,  1e9,  1e10, 1e11,
    1e12, 1e13, 1e14, 1e15, 1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};

double pow10(int e) {
  if (e >= 0 && e <= 22) return kPow10[e];
  if (e < 0 && e >= -22) return 1.0 / kPow10[-e];
  return std::pow(10.0, e);
}

}  // namespace

double round_to_digits(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const double ax = std::fabs(x);
  int e = static_cast<int>(std::floor(std::log10(ax)));
  // log10 may be off by one near exact powers of ten
  if (pow10(e) > ax) {
    --e;
  } else if (pow10(e + 1) <= ax) {
    ++e;
  }
  const int s = digits - 1 - e;
  if (s >= 0 && s <= 22) return std::nearbyint(x * kPow10[s]) / kPow10[s];
  if (s < 0 && s >= -22) return std::nearbyint(x / kPow10[-s]) * kPow10[-s];
  const long double scale = std::pow(10.0L, static_cast<long double>(s));
  return static_cast<double>(std::nearbyint(static_cast<long double>(x) * scale) / scale);
}

ScalarMode ScalarMode::with_digits(int digits) {
  if (digits != 0 && (digits < 4 || digits > 17)) {
    throw Error(ErrorCode::InvalidArgument,
                "digits must be 0 (native) or between 4 and 17, got " + std::to_string(digits));
  }
  return ScalarMode{digits};
}

double Arithmetic::unit_roundoff() const noexcept {
  if (mode_.digits == 0) return std::numeric_limits<double>::epsilon() / 2;
  return 0.5 * pow10(1 - mode_.digits);
}

const Arithmetic& native_arithmetic() {
  static const Arithmetic ar;
  return ar;
}

}  // namespace jacobi
