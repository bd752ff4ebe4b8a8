#pragma once

// Bidiagonal coordinates: conversion to and from norming constants, the
// structured factors L_{pi,k} and B_{pi,k}, reversal data, and the adjacent
// transposition change of chart.
//
// For a permutation pi, lambda_pi[i] = lambda[pi(i)] and w_pi[i] = w[pi(i)].
// beta is the subdiagonal of B_pi = L_pi^{-1} diag(lambda_pi) L_pi.

#include <cstddef>

#include "jacobi/arithmetic.hpp"
#include "jacobi/core.hpp"

namespace jacobi {

/// B_{pi,k}: lower bidiagonal, diagonal lambda_pi, subdiagonal beta^k.
struct BidiagonalFactor {
  std::vector<double> lambda_pi;
  std::vector<double> beta;
  unsigned power = 1;

  DenseMatrix dense() const;
};

BidiagonalFactor bidiagonal_factor(const BidiagonalData& bd, unsigned power);

/// Lower unipotent L_{pi,k} with entries
///   L(i,j) = (beta_j ... beta_{i-1})^k / ((lambda_i - lambda_j) ... (lambda_i - lambda_{i-1}))
/// for i > j. Needs distinct lambda_pi; any beta (zeros included).
DenseMatrix build_L(const BidiagonalData& bd, unsigned power);

/// Bidiagonal coordinates of the Jacobi matrix with spectral data d in the
/// chart of pi.
BidiagonalData w_to_beta(const SpectralData& d, const Permutation& pi,
                         const Arithmetic& ar = native_arithmetic());

/// Inverse of w_to_beta. Throws BoundaryPoint if some beta_i == 0 and
/// InconsistentCoordinates if the recovered w cannot be made positive.
SpectralData beta_to_w(const BidiagonalData& bd);

/// Spectral data of the index-reversed matrix P T P:
///   w~_i proportional to 1 / (w_i prod_{j != i} |lambda_i - lambda_j|).
SpectralData reversal_data(const SpectralData& d, const Arithmetic& ar = native_arithmetic());

/// Sorts w in decreasing order; ties keep ascending index order.
Permutation initial_permutation(const SpectralData& d);

/// Coordinates in the chart of pi o tau_k, where tau_k swaps positions k and
/// k+1 (0-based, k < n-1). With q = beta_k / (lambda_{k+1} - lambda_k):
///   beta_{k-1} <- q beta_{k-1},  beta_k <- -beta_k / q^2,  beta_{k+1} <- -q beta_{k+1}.
/// Throws SingularTransposition when beta_k == 0.
BidiagonalData apply_transposition(const BidiagonalData& bd, std::size_t k,
                                   const Arithmetic& ar = native_arithmetic());

}  // namespace jacobi
