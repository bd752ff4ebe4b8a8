#pragma once

// Reconstruction engines:
//   de_boor_golub       Stieltjes procedure on node values of the monic
//                       orthogonal polynomials p_k (lambda, w)
//   inverse_bidiagonal  row recursion for R~ seeded by r~_1 = L_{pi,2}^* L_{pi,0} e_1
//   qr_oracle           T = R B_pi R^{-1} from the QR factorization of L_pi
// plus the two-sided driver and the algorithm dispatch.

#include <cstddef>
#include <string_view>
#include <vector>

#include "jacobi/arithmetic.hpp"
#include "jacobi/core.hpp"

namespace jacobi {

enum class Engine { bg, bi };

enum class Algorithm { bg, bi, bg2, bi2, qr };

Algorithm parse_algorithm(std::string_view name);
const char* to_string(Algorithm algo);

/// A polynomial of degree < n stored by its values at the eigenvalues.
struct PolynomialValues {
  std::vector<double> values;
};

/// Weighted inner product sum_j w_j^2 p(lambda_j) q(lambda_j).
double weighted_inner(const SpectralData& d, const PolynomialValues& p, const PolynomialValues& q);

struct StieltjesRun {
  TridiagonalMatrix matrix;
  /// p_0 .. p_{n-1} at the nodes.
  std::vector<PolynomialValues> polynomials;
};

/// Throws NumericalBreakdown when some <<p_k, p_k>> is not positive and finite.
TridiagonalMatrix de_boor_golub(const SpectralData& d, const Arithmetic& ar = native_arithmetic());
StieltjesRun de_boor_golub_traced(const SpectralData& d);

/// r~_1 = L_{pi,2}^* L_{pi,0} e_1, summed bottom to top in each column.
std::vector<double> compute_r1(const BidiagonalData& bd, const Arithmetic& ar = native_arithmetic());

struct BiOptions {
  /// Check that the entries of every new row left of the diagonal vanish to
  /// 1e-10 of the row norm before they are dropped; throws Internal.
  bool check_triangular = false;
  /// Keep every row of R~ (rows[k] has zeros left of position k).
  bool keep_rows = false;
  /// Throw NumericalBreakdown when a diagonal entry of R~ is not positive.
  /// When off, the run continues and non-finite values propagate.
  bool check_positive = true;
};

struct BiRun {
  /// Signed: sign(b_i) = sign(beta_i).
  TridiagonalMatrix matrix;
  std::vector<std::vector<double>> rows;
};

/// T in the chart of bd.pi with sign(b_i) = sign(beta_i).
BiRun inverse_bidiagonal_run(const BidiagonalData& bd, const BiOptions& options,
                             const Arithmetic& ar = native_arithmetic());
TridiagonalMatrix inverse_bidiagonal_signed(const BidiagonalData& bd,
                                            const Arithmetic& ar = native_arithmetic());
/// Same as inverse_bidiagonal_signed with b replaced by |b|.
TridiagonalMatrix inverse_bidiagonal(const BidiagonalData& bd,
                                     const Arithmetic& ar = native_arithmetic());

TridiagonalMatrix qr_oracle_signed(const BidiagonalData& bd,
                                   const Arithmetic& ar = native_arithmetic());
TridiagonalMatrix qr_oracle(const BidiagonalData& bd, const Arithmetic& ar = native_arithmetic());

/// Top half (a_1..a_ceil(n/2), b_1..b_floor(n/2)) from d, the rest from
/// reversal_data(d). Errors are re-thrown with the failing direction named.
TridiagonalMatrix two_sided(const SpectralData& d, Engine engine,
                            const Arithmetic& ar = native_arithmetic());

struct Reconstruction {
  TridiagonalMatrix matrix;
  /// Tightening sweeps spent (summed over both directions for bi2).
  std::size_t sweeps = 0;
};

/// Validates d, then dispatches. bi and qr run initial_permutation, w_to_beta
/// and tighten first. Output has b_i >= 0.
Reconstruction reconstruct(const SpectralData& d, Algorithm algo,
                           const Arithmetic& ar = native_arithmetic());
TridiagonalMatrix reconstruct_from_w(const SpectralData& d, Algorithm algo,
                                     const Arithmetic& ar = native_arithmetic());

}  // namespace jacobi
