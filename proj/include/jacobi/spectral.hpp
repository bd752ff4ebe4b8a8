#pragma once

// Forward problem: eigenvalues by Sturm-sequence bisection, eigenvalues of
// the trailing (n-1)x(n-1) minor, norming constants, and the conversion from
// (lambda, mu) to norming constants.

#include <cstddef>
#include <span>
#include <vector>

#include "jacobi/core.hpp"

namespace jacobi {

/// Eigenvalues of the bottom (n-1)x(n-1) principal minor, ascending.
struct MinorSpectrum {
  std::vector<double> mu;
};

/// Number of eigenvalues of t strictly below x, from the sign pattern of the
/// ratio sequence d_k = p_k(x) / p_{k-1}(x) of leading-minor determinants.
std::size_t sturm_count(const TridiagonalMatrix& t, double x);

/// All eigenvalues, ascending. Works for reducible input too.
std::vector<double> eigenvalues(const TridiagonalMatrix& t);

/// Throws DimensionTooSmall for n < 2.
MinorSpectrum minor_eigenvalues(const TridiagonalMatrix& t);

/// Eigenvalues and positive unit-norm norming constants of a Jacobi matrix.
/// w_i is the first component of the normalized eigenvector for lambda_i,
/// taken from a twisted factorization; this stays accurate when w_i is far
/// below the resolution of lambda_i - mu_j. Throws NotJacobi when some b_i <= 0.
SpectralData norming_constants(const TridiagonalMatrix& t);

/// w_i^2 = prod_j (lambda_i - mu_j) / prod_{j != i} (lambda_i - lambda_j),
/// normalized to unit norm. Throws InterlacingViolation unless
/// lambda_1 < mu_1 < lambda_2 < ... < mu_{n-1} < lambda_n.
std::vector<double> mu_to_w(std::span<const double> lambda, const MinorSpectrum& minor);

}  // namespace jacobi
