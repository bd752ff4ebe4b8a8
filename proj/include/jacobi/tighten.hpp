#pragma once

// Tight permutations. A permutation pi is tight when every
// q_k = beta_k / (lambda_{k+1} - lambda_k) satisfies |q_k| <= 1; tau_k is
// tightening when |q_k| > 1. Applying tightening transpositions always ends
// at a tight permutation: the suffix products p_k = prod_{i>=k} |beta_i|
// decrease lexicographically at every step.

#include <cstddef>
#include <vector>

#include "jacobi/arithmetic.hpp"
#include "jacobi/core.hpp"

namespace jacobi {

/// Tightness slack for native arithmetic: |q| <= 1 + 1e-12 counts as tight.
inline constexpr double kTightTolerance = 1e-12;

/// Slack used under `ar`: kTightTolerance, widened to a few rounding units
/// in reduced precision so that |q| ~ 1 cannot ping-pong.
double tightness_tolerance(const Arithmetic& ar);

std::vector<double> q_values(const BidiagonalData& bd, const Arithmetic& ar = native_arithmetic());

bool is_tight(const BidiagonalData& bd, double tol = kTightTolerance);

struct TightenStep {
  std::size_t sweep;  // 1-based
  std::size_t k;      // 0-based position of the transposition
  double q_before;
  double q_after;
};

struct TightenOptions {
  /// 0 selects the default of 64 n.
  std::size_t max_sweeps = 0;
  bool record_trace = false;
  /// Verify the lexicographic decrease of (p_1, p_2, ...) at every step
  /// (log domain); throws Internal on violation.
  bool check_monovariant = false;
};

struct TightenReport {
  BidiagonalData result;
  /// Full left-to-right passes, including the final one that applied nothing.
  std::size_t sweeps = 0;
  std::size_t transpositions = 0;
  std::vector<TightenStep> trace;
};

/// Sweeps k = 1..n-1 repeatedly, applying tau_k wherever |q_k| exceeds the
/// tolerance, until a sweep applies none. Throws NonTermination past
/// max_sweeps.
TightenReport tighten(const BidiagonalData& bd, const TightenOptions& options = {},
                      const Arithmetic& ar = native_arithmetic());

}  // namespace jacobi
