#include "jacobi/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jacobi/coords.hpp"
#include "jacobi/tighten.hpp"

namespace jacobi {
namespace {

constexpr std::size_t kAll = std::numeric_limits<std::size_t>::max();

// Leading recurrence coefficients a_1..a_m and b_1..b_min(m, n-1).
struct Coefficients {
  std::vector<double> a;
  std::vector<double> b;
};

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

Coefficients stieltjes(const SpectralData& d, std::size_t m, const Arithmetic& ar,
                       std::vector<PolynomialValues>* trace) {
  const std::size_t n = d.size();
  m = std::min(m, n);
  std::vector<Real> lambda;
  std::vector<Real> w2;
  lambda.reserve(n);
  w2.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    lambda.emplace_back(d.lambda[j], ar);
    const Real w(d.w[j], ar);
    w2.push_back(w * w);
  }

  const Real zero(0.0, ar);
  std::vector<Real> p(n, Real(1.0, ar));
  std::vector<Real> p_prev(n, zero);
  std::vector<Real> wp(n, zero);
  Real norm_prev = zero;
  Real b2 = zero;
  Coefficients out;

  for (std::size_t k = 0;; ++k) {
    if (trace) {
      PolynomialValues pv;
      for (const Real& x : p) pv.values.push_back(x.value());
      trace->push_back(std::move(pv));
    }
    Real norm = zero;
    for (std::size_t j = 0; j < n; ++j) {
      wp[j] = w2[j] * p[j];
      norm += wp[j] * p[j];
    }
    if (!positive_finite(norm.value())) {
      throw Error(ErrorCode::NumericalBreakdown,
                  "<<p_" + std::to_string(k) + ", p_" + std::to_string(k) + ">> is not positive");
    }
    if (k >= 1) {
      b2 = norm / norm_prev;
      out.b.push_back(sqrt(b2).value());
    }
    if (k == m) break;

    Real moment = zero;
    for (std::size_t j = 0; j < n; ++j) moment += wp[j] * p[j] * lambda[j];
    const Real a = moment / norm;
    out.a.push_back(a.value());
    if (k + 1 == n) break;

    for (std::size_t j = 0; j < n; ++j) {
      const Real next = (lambda[j] - a) * p[j] - b2 * p_prev[j];
      p_prev[j] = p[j];
      p[j] = next;
    }
    norm_prev = norm;
  }
  return out;
}

std::vector<Real> r1_values(const std::vector<Real>& lp, const std::vector<Real>& beta2) {
  const std::size_t n = lp.size();
  const Real zero = lp.front() - lp.front();
  std::vector<Real> r1(n, zero);
  // Row i of L_{pi,2} scaled by (L_{pi,0})_{i,1}, generated right to left:
  //   u_{i,i} = 1 / prod_{m<i} (lambda_i - lambda_m)
  //   u_{i,j} = u_{i,j+1} * beta_j^2 / (lambda_i - lambda_j)
  // Rows are visited bottom-up so each column sums bottom to top.
  for (std::size_t i = n; i-- > 0;) {
    Real g = zero + 1.0;
    for (std::size_t m = 0; m < i; ++m) g = g / (lp[i] - lp[m]);
    Real u = g;
    r1[i] += u;
    for (std::size_t j = i; j-- > 0;) {
      u = u * beta2[j] / (lp[i] - lp[j]);
      r1[j] += u;
    }
  }
  return r1;
}

void check_row_vanishes(double left, double diag, const std::vector<Real>& next, std::size_t from,
                        std::size_t k) {
  double norm = 0.0;
  for (std::size_t j = from; j < next.size(); ++j) norm = std::max(norm, std::fabs(next[j].value()));
  const double tol = 1e-10 * norm;
  if (std::fabs(left) > tol || std::fabs(diag) > tol) {
    throw Error(ErrorCode::Internal, "row " + std::to_string(k + 2) +
                                         " of R~ is not upper triangular (residuals " +
                                         std::to_string(left) + ", " + std::to_string(diag) + ")");
  }
}

// Runs rows 1..m (+ the b extraction of row m+1) of the inverse bidiagonal
// recursion. Coefficients carry the sign of beta.
Coefficients bidiagonal_recursion(const BidiagonalData& bd, std::size_t m, const Arithmetic& ar,
                                  const BiOptions& options,
                                  std::vector<std::vector<double>>* rows) {
  const std::size_t n = bd.size();
  if (bd.beta.size() + 1 != n || bd.pi.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent bidiagonal data dimensions");
  }
  m = std::min(m, n);
  Coefficients out;
  if (n == 1) {
    out.a.push_back(bd.lambda_pi[0]);
    if (rows) rows->push_back({1.0});
    return out;
  }

  std::vector<Real> lp;
  std::vector<Real> beta;
  std::vector<Real> beta2;
  for (double x : bd.lambda_pi) lp.emplace_back(x, ar);
  for (double x : bd.beta) {
    beta.emplace_back(x, ar);
    beta2.push_back(beta.back() * beta.back());
  }

  const Real zero(0.0, ar);
  std::vector<Real> prev(n, zero);
  std::vector<Real> curr = r1_values(lp, beta2);
  std::vector<Real> next(n, zero);
  Real b2 = zero;

  auto keep = [&](const std::vector<Real>& row, std::size_t k) {
    if (!rows) return;
    std::vector<double> r(n, 0.0);
    for (std::size_t j = k; j < n; ++j) r[j] = row[j].value();
    rows->push_back(std::move(r));
  };
  keep(curr, 0);

  for (std::size_t k = 0; k < n; ++k) {
    if (options.check_positive && !positive_finite(curr[k].value())) {
      throw Error(ErrorCode::NumericalBreakdown,
                  "diagonal entry r~_" + std::to_string(k + 1) + "," + std::to_string(k + 1) +
                      " is not positive");
    }
    if (k >= 1) {
      // b_{k-1} = beta_{k-1} sqrt(r~_{k,k} / r~_{k-1,k-1})
      const Real ratio = curr[k] / prev[k - 1];
      out.b.push_back((beta[k - 1] * sqrt(ratio)).value());
      b2 = beta2[k - 1] * ratio;
    }
    if (k == m) break;

    // position k of r~_k B_{pi,2} - a_k r~_k - b_{k-1}^2 r~_{k-1} vanishes
    Real correction = zero;
    if (k + 1 < n) correction = beta2[k] * curr[k + 1];
    if (k >= 1) correction -= b2 * prev[k];
    const Real a = lp[k] + correction / curr[k];
    out.a.push_back(a.value());
    if (k + 1 == n) break;

    for (std::size_t j = k + 1; j < n; ++j) {
      Real v = (lp[j] - a) * curr[j];
      if (j + 1 < n) v += beta2[j] * curr[j + 1];
      if (k >= 1) v -= b2 * prev[j];
      next[j] = v;
    }
    if (options.check_triangular) {
      const double left =
          k >= 1 ? bd.beta[k - 1] * bd.beta[k - 1] * curr[k].value() - b2.value() * prev[k - 1].value()
                 : 0.0;
      double diag = (bd.lambda_pi[k] - a.value()) * curr[k].value();
      if (k + 1 < n) diag += bd.beta[k] * bd.beta[k] * curr[k + 1].value();
      if (k >= 1) diag -= b2.value() * prev[k].value();
      check_row_vanishes(left, diag, next, k + 1, k);
    }
    for (std::size_t j = 0; j <= k; ++j) next[j] = zero;
    std::swap(prev, curr);
    std::swap(curr, next);
    keep(curr, k + 1);
  }
  return out;
}

TridiagonalMatrix assemble(Coefficients c) { return {std::move(c.a), std::move(c.b)}; }

struct EngineRun {
  Coefficients coefficients;
  std::size_t sweeps = 0;
};

BidiagonalData tight_coordinates(const SpectralData& d, const Arithmetic& ar, std::size_t& sweeps) {
  const BidiagonalData start = w_to_beta(d, initial_permutation(d), ar);
  TightenReport report = tighten(start, {}, ar);
  sweeps += report.sweeps;
  return std::move(report.result);
}

EngineRun run_engine(const SpectralData& d, Engine engine, std::size_t m, const Arithmetic& ar) {
  EngineRun run;
  if (engine == Engine::bg) {
    run.coefficients = stieltjes(d, m, ar, nullptr);
  } else {
    const BidiagonalData bd = tight_coordinates(d, ar, run.sweeps);
    run.coefficients = bidiagonal_recursion(bd, m, ar, {}, nullptr);
  }
  for (double& b : run.coefficients.b) b = std::fabs(b);
  return run;
}

Reconstruction two_sided_run(const SpectralData& d, Engine engine, const Arithmetic& ar) {
  const std::size_t n = d.size();
  const std::size_t top = (n + 1) / 2;
  const std::size_t bottom = n / 2;

  auto tagged = [&](const char* direction, const SpectralData& data, std::size_t m) {
    try {
      return run_engine(data, engine, m, ar);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(direction) + " direction: " + e.what());
    }
  };

  EngineRun fwd = tagged("forward", d, top);
  std::vector<double> a(n);
  std::vector<double> b(n - 1);
  for (std::size_t i = 0; i < top; ++i) a[i] = fwd.coefficients.a[i];
  for (std::size_t i = 0; i < bottom && i < n - 1; ++i) b[i] = fwd.coefficients.b[i];
  std::size_t sweeps = fwd.sweeps;

  if (bottom > 0) {
    SpectralData rev_data = [&] {
      try {
        return reversal_data(d, ar);
      } catch (const Error& e) {
        throw Error(e.code(), std::string("reversed direction: ") + e.what());
      }
    }();
    EngineRun rev = tagged("reversed", rev_data, bottom);
    for (std::size_t i = 0; i < n - top; ++i) a[n - 1 - i] = rev.coefficients.a[i];
    for (std::size_t i = 0; i + bottom < n - 1; ++i) b[n - 2 - i] = rev.coefficients.b[i];
    sweeps += rev.sweeps;
  }
  return {TridiagonalMatrix(std::move(a), std::move(b)), sweeps};
}

// Householder QR; returns R with a positive diagonal.
std::vector<std::vector<Real>> triangular_factor(std::vector<std::vector<Real>> a) {
  const std::size_t n = a.size();
  const Real zero = a[0][0] - a[0][0];
  for (std::size_t c = 0; c + 1 < n; ++c) {
    Real norm2 = zero;
    for (std::size_t i = c; i < n; ++i) norm2 += a[i][c] * a[i][c];
    if (norm2.value() == 0.0) continue;
    const Real norm = sqrt(norm2);
    const Real alpha = a[c][c].value() >= 0.0 ? -norm : norm;
    std::vector<Real> v;
    for (std::size_t i = c; i < n; ++i) v.push_back(a[i][c]);
    v[0] -= alpha;
    Real v2 = zero;
    for (const Real& x : v) v2 += x * x;
    if (v2.value() == 0.0) continue;
    for (std::size_t j = c; j < n; ++j) {
      Real s = zero;
      for (std::size_t i = c; i < n; ++i) s += v[i - c] * a[i][j];
      const Real f = (s + s) / v2;
      for (std::size_t i = c; i < n; ++i) a[i][j] -= f * v[i - c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) a[i][j] = zero;
    if (a[i][i].value() < 0.0) {
      for (std::size_t j = i; j < n; ++j) a[i][j] = -a[i][j];
    }
    if (!(a[i][i].value() > 0.0)) {
      throw Error(ErrorCode::Internal, "QR factor has a non-positive diagonal entry");
    }
  }
  return a;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "bg") return Algorithm::bg;
  if (name == "bi") return Algorithm::bi;
  if (name == "bg2") return Algorithm::bg2;
  if (name == "bi2") return Algorithm::bi2;
  if (name == "qr") return Algorithm::qr;
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::bg: return "bg";
    case Algorithm::bi: return "bi";
    case Algorithm::bg2: return "bg2";
    case Algorithm::bi2: return "bi2";
    case Algorithm::qr: return "qr";
  }
  return "?";
}

double weighted_inner(const SpectralData& d, const PolynomialValues& p, const PolynomialValues& q) {
  double s = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) s += d.w[j] * d.w[j] * p.values[j] * q.values[j];
  return s;
}

TridiagonalMatrix de_boor_golub(const SpectralData& d, const Arithmetic& ar) {
  return assemble(stieltjes(validate_spectral(d), kAll, ar, nullptr));
}

StieltjesRun de_boor_golub_traced(const SpectralData& d) {
  std::vector<PolynomialValues> polys;
  TridiagonalMatrix t = assemble(stieltjes(validate_spectral(d), kAll, native_arithmetic(), &polys));
  return {std::move(t), std::move(polys)};
}

std::vector<double> compute_r1(const BidiagonalData& bd, const Arithmetic& ar) {
  std::vector<Real> lp;
  std::vector<Real> beta2;
  for (double x : bd.lambda_pi) lp.emplace_back(x, ar);
  for (double x : bd.beta) {
    const Real b(x, ar);
    beta2.push_back(b * b);
  }
  std::vector<double> out;
  for (const Real& x : r1_values(lp, beta2)) out.push_back(x.value());
  return out;
}

BiRun inverse_bidiagonal_run(const BidiagonalData& bd, const BiOptions& options,
                             const Arithmetic& ar) {
  std::vector<std::vector<double>> rows;
  TridiagonalMatrix t =
      assemble(bidiagonal_recursion(bd, kAll, ar, options, options.keep_rows ? &rows : nullptr));
  return {std::move(t), std::move(rows)};
}

TridiagonalMatrix inverse_bidiagonal_signed(const BidiagonalData& bd, const Arithmetic& ar) {
  return assemble(bidiagonal_recursion(bd, kAll, ar, {}, nullptr));
}

TridiagonalMatrix inverse_bidiagonal(const BidiagonalData& bd, const Arithmetic& ar) {
  return canonical(inverse_bidiagonal_signed(bd, ar));
}

TridiagonalMatrix qr_oracle_signed(const BidiagonalData& bd, const Arithmetic& ar) {
  const std::size_t n = bd.size();
  if (bd.beta.size() + 1 != n) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent bidiagonal data dimensions");
  }
  const DenseMatrix l = build_L(bd, 1);
  std::vector<std::vector<Real>> lr(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lr[i].emplace_back(l(i, j), ar);
  }
  const std::vector<std::vector<Real>> r = triangular_factor(std::move(lr));

  std::vector<Real> lp;
  std::vector<Real> beta;
  for (double x : bd.lambda_pi) lp.emplace_back(x, ar);
  for (double x : bd.beta) beta.emplace_back(x, ar);
  const Real zero(0.0, ar);

  // M = R B_pi, then solve T R = M one column at a time.
  std::vector<std::vector<Real>> m(n, std::vector<Real>(n, zero));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j) {
      Real v = r[i][j] * lp[j];
      if (j + 1 < n) v += r[i][j + 1] * beta[j];
      m[i][j] = v;
    }
  }
  std::vector<std::vector<Real>> t(n, std::vector<Real>(n, zero));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      Real v = m[i][j];
      for (std::size_t k = 0; k < j; ++k) v -= t[i][k] * r[k][j];
      t[i][j] = v / r[j][j];
    }
  }

  std::vector<double> a(n);
  std::vector<double> b(n - 1);
  for (std::size_t i = 0; i < n; ++i) a[i] = t[i][i].value();
  for (std::size_t i = 0; i + 1 < n; ++i) b[i] = ((t[i][i + 1] + t[i + 1][i]) / 2.0).value();
  return {std::move(a), std::move(b)};
}

TridiagonalMatrix qr_oracle(const BidiagonalData& bd, const Arithmetic& ar) {
  return canonical(qr_oracle_signed(bd, ar));
}

TridiagonalMatrix two_sided(const SpectralData& d, Engine engine, const Arithmetic& ar) {
  return two_sided_run(validate_spectral(d), engine, ar).matrix;
}

Reconstruction reconstruct(const SpectralData& d, Algorithm algo, const Arithmetic& ar) {
  const SpectralData valid = validate_spectral(d);
  switch (algo) {
    case Algorithm::bg:
      return {assemble(run_engine(valid, Engine::bg, kAll, ar).coefficients), 0};
    case Algorithm::bi: {
      EngineRun run = run_engine(valid, Engine::bi, kAll, ar);
      return {assemble(std::move(run.coefficients)), run.sweeps};
    }
    case Algorithm::bg2:
      return two_sided_run(valid, Engine::bg, ar);
    case Algorithm::bi2:
      return two_sided_run(valid, Engine::bi, ar);
    case Algorithm::qr: {
      std::size_t sweeps = 0;
      const BidiagonalData bd = tight_coordinates(valid, ar, sweeps);
      return {qr_oracle(bd, ar), sweeps};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

TridiagonalMatrix reconstruct_from_w(const SpectralData& d, Algorithm algo, const Arithmetic& ar) {
  return reconstruct(d, algo, ar).matrix;
}

}  // namespace jacobi
