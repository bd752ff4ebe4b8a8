#pragma once

// Domain types shared by every module: tridiagonal matrices, spectral
// (inverse) data, permutations and bidiagonal coordinates.
//
// Documentation uses 1-based indices (a_1..a_n, b_1..b_{n-1}); storage is
// 0-based throughout.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jacobi {

enum class ErrorCode {
  DimensionMismatch,
  DimensionTooSmall,
  DuplicateOrUnsortedSpectrum,
  NonpositiveNormingConstant,
  NotNormalized,
  NotJacobi,
  InterlacingViolation,
  BoundaryPoint,
  InconsistentCoordinates,
  SingularTransposition,
  InvalidArgument,
  ParseError,
  NonTermination,
  NumericalBreakdown,
  Internal,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library. Validation failures describe bad
/// input; numerical failures (is_numerical()) describe a computation that
/// broke down on input that was accepted.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  bool is_numerical() const noexcept;

 private:
  ErrorCode code_;
};

/// Real symmetric tridiagonal matrix with diagonal a (n entries) and
/// off-diagonal b (n-1 entries).
class TridiagonalMatrix {
 public:
  TridiagonalMatrix(std::vector<double> a, std::vector<double> b);

  std::size_t size() const noexcept { return a_.size(); }
  std::span<const double> diagonal() const noexcept { return a_; }
  std::span<const double> off_diagonal() const noexcept { return b_; }
  double a(std::size_t i) const { return a_[i]; }
  double b(std::size_t i) const { return b_[i]; }

  /// b_i > 0 for every i.
  bool is_jacobi() const noexcept;

  bool operator==(const TridiagonalMatrix&) const = default;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Same matrix with every off-diagonal entry replaced by its absolute value.
/// Spectrum is unchanged.
TridiagonalMatrix canonical(const TridiagonalMatrix& t);

/// P T P with P the index-reversing permutation matrix.
TridiagonalMatrix reversed(const TridiagonalMatrix& t);

/// Eigenvalues lambda (ascending) and norming constants w (positive, unit
/// norm). The constructor only checks that the lengths agree; use
/// validate_spectral() to enforce the remaining invariants.
struct SpectralData {
  SpectralData(std::vector<double> lambda, std::vector<double> w);

  std::size_t size() const noexcept { return lambda.size(); }

  std::vector<double> lambda;
  std::vector<double> w;
};

/// Bijection of {0..n-1}. One-line notation is 1-based for display.
/// Matrix convention: P_pi e_i = e_{pi(i)}, so compose(p, q) = p o q
/// corresponds to P_p P_q.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> map);

  static Permutation identity(std::size_t n);
  static Permutation from_one_line(std::span<const int> one_based);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_[i]; }
  std::span<const std::size_t> map() const noexcept { return map_; }

  Permutation inverse() const;
  /// this o tau_k with tau_k the transposition of positions k and k+1.
  Permutation with_transposition(std::size_t k) const;
  std::vector<int> one_line() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> map_;
};

/// (p o q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);

/// Permuted spectrum lambda_pi[i] = lambda[pi(i)] together with the
/// pi-bidiagonal coordinates beta (n-1 unconstrained reals).
struct BidiagonalData {
  Permutation pi;
  std::vector<double> lambda_pi;
  std::vector<double> beta;

  std::size_t size() const noexcept { return lambda_pi.size(); }
};

/// Small row-major dense matrix. Only used by tests and the QR route.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

DenseMatrix dense_of(const TridiagonalMatrix& t);

/// sum |a_i - a'_i| + sum |b_i - b'_i|.
double error_metric(const TridiagonalMatrix& t1, const TridiagonalMatrix& t2);

/// Relative tolerance on ||w||^2 accepted (and renormalized) by
/// validate_spectral.
inline constexpr double kNormalizationTolerance = 1e-8;

/// Checks the SpectralData invariants and returns the data with w scaled to
/// exact unit norm.
SpectralData validate_spectral(const SpectralData& d);

}  // namespace jacobi
