#include "jacobi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jacobi {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Bracket {
  double lo;
  double hi;
};

Bracket gershgorin(const TridiagonalMatrix& t) {
  const std::size_t n = t.size();
  Bracket g{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::fabs(t.b(i - 1));
    if (i + 1 < n) r += std::fabs(t.b(i));
    g.lo = std::min(g.lo, t.a(i) - r);
    g.hi = std::max(g.hi, t.a(i) + r);
  }
  return g;
}

double pivot_floor(const TridiagonalMatrix& t) {
  double bmax2 = 1.0;
  for (double b : t.off_diagonal()) bmax2 = std::max(bmax2, b * b);
  return std::numeric_limits<double>::min() * bmax2;
}

std::size_t count_below(const TridiagonalMatrix& t, double x, double pivmin) {
  const std::size_t n = t.size();
  std::size_t count = 0;
  double d = t.a(0) - x;
  if (std::fabs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double b = t.b(i - 1);
    d = (t.a(i) - x) - b * b / d;
    if (std::fabs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

// |v_1| / ||v|| for the eigenvector v of t at the computed eigenvalue x, from
// the twisted factorization at the index where the eigenvector peaks. Each
// component is a product of ratios outward from the twist, so small leading
// components keep their relative accuracy.
double first_component(const TridiagonalMatrix& t, double x, double pivmin) {
  const std::size_t n = t.size();
  if (n == 1) return 1.0;
  auto guard = [pivmin](double d) { return std::fabs(d) < pivmin ? -pivmin : d; };
  std::vector<double> top(n), bottom(n);
  top[0] = guard(t.a(0) - x);
  for (std::size_t k = 1; k < n; ++k) {
    top[k] = guard((t.a(k) - x) - t.b(k - 1) * t.b(k - 1) / top[k - 1]);
  }
  bottom[n - 1] = guard(t.a(n - 1) - x);
  for (std::size_t k = n - 1; k-- > 0;) {
    bottom[k] = guard((t.a(k) - x) - t.b(k) * t.b(k) / bottom[k + 1]);
  }
  std::size_t r = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double gamma = std::fabs(top[k] + bottom[k] - (t.a(k) - x));
    if (gamma < best) {
      best = gamma;
      r = k;
    }
  }
  std::vector<double> v(n, 0.0);
  v[r] = 1.0;
  double total = 1.0;
  for (std::size_t k = r; k-- > 0;) {
    v[k] = -(t.b(k) / top[k]) * v[k + 1];
    total += v[k] * v[k];
  }
  for (std::size_t k = r + 1; k < n; ++k) {
    v[k] = -(t.b(k - 1) / bottom[k]) * v[k - 1];
    total += v[k] * v[k];
  }
  return std::fabs(v[0]) / std::sqrt(total);
}

}  // namespace

std::size_t sturm_count(const TridiagonalMatrix& t, double x) {
  return count_below(t, x, pivot_floor(t));
}

std::vector<double> eigenvalues(const TridiagonalMatrix& t) {
  const std::size_t n = t.size();
  if (n == 1) return {t.a(0)};

  const Bracket g = gershgorin(t);
  const double tnorm = std::max(std::fabs(g.lo), std::fabs(g.hi));
  const double pivmin = pivot_floor(t);
  const double widen = 2.0 * kEps * tnorm + 2.0 * pivmin;
  const double floor_tol = std::numeric_limits<double>::min();

  std::vector<double> out(n);
  double lower = g.lo - widen;
  for (std::size_t i = 0; i < n; ++i) {
    // eigenvalue i is the smallest x with more than i eigenvalues below it;
    // the previous eigenvalue is a valid lower bound
    double lo = lower;
    double hi = g.hi + widen;
    while (hi - lo > 4.0 * kEps * std::max(std::fabs(lo), std::fabs(hi)) + floor_tol) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      if (count_below(t, mid, pivmin) > i) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out[i] = lo + 0.5 * (hi - lo);
    lower = lo;
  }
  return out;
}

MinorSpectrum minor_eigenvalues(const TridiagonalMatrix& t) {
  const std::size_t n = t.size();
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "minor spectrum needs n >= 2");
  TridiagonalMatrix minor(std::vector<double>(t.diagonal().begin() + 1, t.diagonal().end()),
                          std::vector<double>(t.off_diagonal().begin() + 1, t.off_diagonal().end()));
  return MinorSpectrum{eigenvalues(minor)};
}

SpectralData norming_constants(const TridiagonalMatrix& t) {
  if (!t.is_jacobi()) {
    throw Error(ErrorCode::NotJacobi, "norming constants need every b_i > 0");
  }
  std::vector<double> lambda = eigenvalues(t);
  const std::size_t n = t.size();
  const double pivmin = pivot_floor(t);
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = first_component(t, lambda[i], pivmin);
    total += w[i] * w[i];
  }
  const double norm = std::sqrt(total);
  for (double& x : w) x /= norm;
  return SpectralData(std::move(lambda), std::move(w));
}

std::vector<double> mu_to_w(std::span<const double> lambda, const MinorSpectrum& minor) {
  const std::size_t n = lambda.size();
  const auto& mu = minor.mu;
  if (n == 0 || mu.size() + 1 != n) {
    throw Error(ErrorCode::DimensionMismatch, "need n eigenvalues and n-1 minor eigenvalues");
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (!(lambda[j] < mu[j] && mu[j] < lambda[j + 1])) {
      throw Error(ErrorCode::InterlacingViolation,
                  "lambda and mu do not strictly interlace at index " + std::to_string(j + 1));
    }
  }
  // Each mu_j is paired with the lambda on the far side from lambda_i, so
  // every factor lies in (0, 1) and the product cannot overflow.
  std::vector<double> w2(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double partner = j < i ? lambda[j] : lambda[j + 1];
      p *= (lambda[i] - mu[j]) / (lambda[i] - partner);
    }
    w2[i] = p;
  }
  double total = 0.0;
  for (double x : w2) total += x;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::sqrt(w2[i] / total);
  return w;
}

}  // namespace jacobi
