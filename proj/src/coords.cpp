#include "jacobi/coords.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace jacobi {
namespace {

void require_distinct(std::span<const double> lambda_pi) {
  std::vector<double> sorted(lambda_pi.begin(), lambda_pi.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::DuplicateOrUnsortedSpectrum, "permuted eigenvalues must be distinct");
  }
}

double int_power(double x, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

DenseMatrix BidiagonalFactor::dense() const {
  const std::size_t n = lambda_pi.size();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = lambda_pi[i];
  for (std::size_t i = 0; i + 1 < n; ++i) m(i + 1, i) = int_power(beta[i], power);
  return m;
}

BidiagonalFactor bidiagonal_factor(const BidiagonalData& bd, unsigned power) {
  return BidiagonalFactor{bd.lambda_pi, bd.beta, power};
}

DenseMatrix build_L(const BidiagonalData& bd, unsigned power) {
  require_distinct(bd.lambda_pi);
  const std::size_t n = bd.size();
  const auto& lp = bd.lambda_pi;
  DenseMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    l(i, i) = 1.0;
    // walk left along row i: L(i,j) = L(i,j+1) * beta_j^k / (lambda_i - lambda_j)
    double v = 1.0;
    for (std::size_t j = i; j-- > 0;) {
      v = v * int_power(bd.beta[j], power) / (lp[i] - lp[j]);
      l(i, j) = v;
    }
  }
  return l;
}

BidiagonalData w_to_beta(const SpectralData& d, const Permutation& pi, const Arithmetic& ar) {
  const SpectralData valid = validate_spectral(d);
  const std::size_t n = valid.size();
  if (pi.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "permutation size differs from spectral data");
  }
  std::vector<Real> lp;
  std::vector<Real> wp;
  lp.reserve(n);
  wp.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    lp.emplace_back(valid.lambda[pi(i)], ar);
    wp.emplace_back(valid.w[pi(i)], ar);
  }

  BidiagonalData out{pi, {}, std::vector<double>(n - 1)};
  out.lambda_pi.reserve(n);
  for (const Real& x : lp) out.lambda_pi.push_back(x.value());

  // beta_i = (lambda_{i+1} - lambda_i) * (w_{i+1} / w_i)
  //          * prod_{m<i} (lambda_{i+1} - lambda_m) / (lambda_i - lambda_m)
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Real r = (lp[i + 1] - lp[i]) * (wp[i + 1] / wp[i]);
    for (std::size_t m = 0; m < i; ++m) r *= (lp[i + 1] - lp[m]) / (lp[i] - lp[m]);
    out.beta[i] = r.value();
  }
  return out;
}

SpectralData beta_to_w(const BidiagonalData& bd) {
  const std::size_t n = bd.size();
  if (bd.pi.size() != n || bd.beta.size() + 1 != n) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent bidiagonal data dimensions");
  }
  require_distinct(bd.lambda_pi);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (bd.beta[i] == 0.0) {
      throw Error(ErrorCode::BoundaryPoint,
                  "beta_" + std::to_string(i + 1) + " = 0: norming constants are undefined");
    }
  }
  const auto& lp = bd.lambda_pi;

  // w_i = w_1 * prod_{m<i} beta_m / prod_{m<i} (lambda_i - lambda_m), kept as
  // (sign, log magnitude) so that wide dynamic ranges stay representable.
  std::vector<double> logw(n, 0.0);
  std::vector<int> sign(n, 1);
  double beta_log = 0.0;
  int beta_sign = 1;
  for (std::size_t i = 1; i < n; ++i) {
    beta_log += std::log(std::fabs(bd.beta[i - 1]));
    if (bd.beta[i - 1] < 0.0) beta_sign = -beta_sign;
    double gap_log = 0.0;
    int gap_sign = 1;
    for (std::size_t m = 0; m < i; ++m) {
      const double g = lp[i] - lp[m];
      gap_log += std::log(std::fabs(g));
      if (g < 0.0) gap_sign = -gap_sign;
    }
    logw[i] = beta_log - gap_log;
    sign[i] = beta_sign * gap_sign;
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (sign[i] != sign[0]) {
      throw Error(ErrorCode::InconsistentCoordinates,
                  "coordinates do not correspond to positive norming constants");
    }
  }

  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> wp(n);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    wp[i] = std::exp(logw[i] - top);
    norm2 += wp[i] * wp[i];
  }
  const double scale = 1.0 / std::sqrt(norm2);

  std::vector<double> lambda(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    lambda[bd.pi(i)] = lp[i];
    w[bd.pi(i)] = wp[i] * scale;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(lambda[i] < lambda[i + 1])) {
      throw Error(ErrorCode::DuplicateOrUnsortedSpectrum,
                  "lambda_pi is not pi applied to an ascending spectrum");
    }
  }
  return SpectralData(std::move(lambda), std::move(w));
}

SpectralData reversal_data(const SpectralData& d, const Arithmetic& ar) {
  const SpectralData valid = validate_spectral(d);
  const std::size_t n = valid.size();
  std::vector<Real> lambda;
  lambda.reserve(n);
  for (double x : valid.lambda) lambda.emplace_back(x, ar);

  std::vector<Real> wt;
  wt.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Real denom(valid.w[i], ar);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom *= abs(lambda[i] - lambda[j]);
    }
    wt.push_back(1.0 / denom);
  }
  // c is fixed by unit normalization; scale by the largest entry first
  Real top = *std::max_element(wt.begin(), wt.end());
  Real norm2(0.0, ar);
  for (Real& x : wt) {
    x = x / top;
    norm2 += x * x;
  }
  const Real norm = sqrt(norm2);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (wt[i] / norm).value();
  // the rounded result can miss unit norm by more than validation allows
  double out2 = 0.0;
  for (double x : out) out2 += x * x;
  for (double& x : out) x /= std::sqrt(out2);
  return SpectralData(valid.lambda, std::move(out));
}

Permutation initial_permutation(const SpectralData& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return d.w[i] > d.w[j]; });
  return Permutation(std::move(order));
}

BidiagonalData apply_transposition(const BidiagonalData& bd, std::size_t k, const Arithmetic& ar) {
  const std::size_t n = bd.size();
  if (k + 1 >= n) throw Error(ErrorCode::InvalidArgument, "transposition index out of range");
  if (bd.beta[k] == 0.0) {
    throw Error(ErrorCode::SingularTransposition,
                "beta_" + std::to_string(k + 1) + " = 0: the chart change is undefined");
  }
  const Real beta_k(bd.beta[k], ar);
  const Real q = beta_k / (Real(bd.lambda_pi[k + 1], ar) - Real(bd.lambda_pi[k], ar));

  BidiagonalData out = bd;
  out.pi = bd.pi.with_transposition(k);
  std::swap(out.lambda_pi[k], out.lambda_pi[k + 1]);
  if (k >= 1) out.beta[k - 1] = (q * bd.beta[k - 1]).value();
  out.beta[k] = (-beta_k / (q * q)).value();
  if (k + 2 < n) out.beta[k + 1] = (-q * bd.beta[k + 1]).value();
  return out;
}

}  // namespace jacobi
