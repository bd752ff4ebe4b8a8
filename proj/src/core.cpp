#include "jacobi/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jacobi {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DuplicateOrUnsortedSpectrum: return "DuplicateOrUnsortedSpectrum";
    case ErrorCode::NonpositiveNormingConstant: return "NonpositiveNormingConstant";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotJacobi: return "NotJacobi";
    case ErrorCode::InterlacingViolation: return "InterlacingViolation";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::InconsistentCoordinates: return "InconsistentCoordinates";
    case ErrorCode::SingularTransposition: return "SingularTransposition";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool Error::is_numerical() const noexcept {
  return code_ == ErrorCode::NonTermination || code_ == ErrorCode::NumericalBreakdown ||
         code_ == ErrorCode::Internal;
}

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) {
    throw Error(ErrorCode::DimensionTooSmall, "tridiagonal matrix needs n >= 1");
  }
  if (b_.size() + 1 != a_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "off-diagonal must have n-1 = " + std::to_string(a_.size() - 1) +
                    " entries, got " + std::to_string(b_.size()));
  }
}

bool TridiagonalMatrix::is_jacobi() const noexcept {
  return std::all_of(b_.begin(), b_.end(), [](double x) { return x > 0.0; });
}

TridiagonalMatrix canonical(const TridiagonalMatrix& t) {
  std::vector<double> b(t.off_diagonal().begin(), t.off_diagonal().end());
  for (double& x : b) x = std::fabs(x);
  return {std::vector<double>(t.diagonal().begin(), t.diagonal().end()), std::move(b)};
}

TridiagonalMatrix reversed(const TridiagonalMatrix& t) {
  std::vector<double> a(t.diagonal().rbegin(), t.diagonal().rend());
  std::vector<double> b(t.off_diagonal().rbegin(), t.off_diagonal().rend());
  return {std::move(a), std::move(b)};
}

SpectralData::SpectralData(std::vector<double> lambda_, std::vector<double> w_)
    : lambda(std::move(lambda_)), w(std::move(w_)) {
  if (lambda.size() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "lambda and w differ in length");
  }
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) {
      throw Error(ErrorCode::InvalidArgument, "permutation map is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Permutation(std::move(m));
}

Permutation Permutation::from_one_line(std::span<const int> one_based) {
  std::vector<std::size_t> m;
  m.reserve(one_based.size());
  for (int v : one_based) {
    if (v < 1) throw Error(ErrorCode::InvalidArgument, "one-line entries are 1-based");
    m.push_back(static_cast<std::size_t>(v - 1));
  }
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::with_transposition(std::size_t k) const {
  if (k + 1 >= map_.size()) {
    throw Error(ErrorCode::InvalidArgument, "transposition index out of range");
  }
  Permutation out = *this;
  std::swap(out.map_[k], out.map_[k + 1]);
  return out;
}

std::vector<int> Permutation::one_line() const {
  std::vector<int> out;
  out.reserve(map_.size());
  for (std::size_t v : map_) out.push_back(static_cast<int>(v) + 1);
  return out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot compose permutations of different size");
  }
  std::vector<std::size_t> m(p.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = p(q(i));
  return Permutation(std::move(m));
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix dense_of(const TridiagonalMatrix& t) {
  const std::size_t n = t.size();
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = t.a(i);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = t.b(i);
    m(i + 1, i) = t.b(i);
  }
  return m;
}

double error_metric(const TridiagonalMatrix& t1, const TridiagonalMatrix& t2) {
  if (t1.size() != t2.size()) {
    throw Error(ErrorCode::DimensionMismatch, "error_metric needs matrices of equal size");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < t1.size(); ++i) e += std::fabs(t1.a(i) - t2.a(i));
  for (std::size_t i = 0; i + 1 < t1.size(); ++i) e += std::fabs(t1.b(i) - t2.b(i));
  return e;
}

SpectralData validate_spectral(const SpectralData& d) {
  const std::size_t n = d.size();
  if (n == 0) throw Error(ErrorCode::DimensionTooSmall, "empty spectral data");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(d.lambda[i]) || !std::isfinite(d.w[i])) {
      throw Error(ErrorCode::InvalidArgument, "spectral data must be finite");
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(d.lambda[i] < d.lambda[i + 1])) {
      throw Error(ErrorCode::DuplicateOrUnsortedSpectrum,
                  "eigenvalues must be strictly increasing (index " + std::to_string(i + 1) + ")");
    }
  }
  double norm2 = 0.0;
  for (double x : d.w) {
    if (!(x > 0.0)) {
      throw Error(ErrorCode::NonpositiveNormingConstant, "norming constants must be positive");
    }
    norm2 += x * x;
  }
  if (std::fabs(norm2 - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::NotNormalized,
                "sum of squared norming constants is " + std::to_string(norm2));
  }
  SpectralData out = d;
  const double scale = 1.0 / std::sqrt(norm2);
  for (double& x : out.w) x *= scale;
  return out;
}

}  // namespace jacobi
