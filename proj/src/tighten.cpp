#include "jacobi/tighten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobi/coords.hpp"

namespace jacobi {
namespace {

double q_at(const BidiagonalData& bd, std::size_t k, const Arithmetic& ar) {
  return (Real(bd.beta[k], ar) / (Real(bd.lambda_pi[k + 1], ar) - Real(bd.lambda_pi[k], ar)))
      .value();
}

// log p_k = sum_{i>=k} log|beta_i|, for k = 0..n-2
std::vector<double> suffix_log_products(const std::vector<double>& beta) {
  std::vector<double> p(beta.size());
  double acc = 0.0;
  for (std::size_t i = beta.size(); i-- > 0;) {
    acc += std::log(std::fabs(beta[i]));
    p[i] = acc;
  }
  return p;
}

bool same_log(double x, double y) {
  if (std::isinf(x) || std::isinf(y)) return x == y;
  return std::fabs(x - y) <= 1e-9 * (1.0 + std::fabs(x));
}

// (p_1, p_2, ...) must drop lexicographically: the first entry that changes
// decreases. Entries past k never change.
void check_decrease(const BidiagonalData& before, const BidiagonalData& after, std::size_t k) {
  const std::vector<double> pb = suffix_log_products(before.beta);
  const std::vector<double> pa = suffix_log_products(after.beta);
  for (std::size_t j = 0; j <= k; ++j) {
    if (same_log(pb[j], pa[j])) continue;
    if (pa[j] < pb[j]) return;
    throw Error(ErrorCode::Internal, "monovariant p_" + std::to_string(j + 1) + " increased");
  }
  // a zero beta right of k makes every p_j <= p_k vanish on both sides
  if (std::isinf(pb[k]) && std::isinf(pa[k])) return;
  throw Error(ErrorCode::Internal, "monovariant did not decrease at step " + std::to_string(k + 1));
}

}  // namespace

double tightness_tolerance(const Arithmetic& ar) {
  return std::max(kTightTolerance, 8.0 * ar.unit_roundoff());
}

std::vector<double> q_values(const BidiagonalData& bd, const Arithmetic& ar) {
  std::vector<double> q(bd.beta.size());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = q_at(bd, k, ar);
  return q;
}

bool is_tight(const BidiagonalData& bd, double tol) {
  const std::vector<double> q = q_values(bd);
  return std::all_of(q.begin(), q.end(), [tol](double x) { return std::fabs(x) <= 1.0 + tol; });
}

TightenReport tighten(const BidiagonalData& bd, const TightenOptions& options,
                      const Arithmetic& ar) {
  const std::size_t n = bd.size();
  const std::size_t max_sweeps = options.max_sweeps ? options.max_sweeps : 64 * n;
  const double limit = 1.0 + tightness_tolerance(ar);

  TightenReport report{bd, 0, 0, {}};
  std::vector<double> q = q_values(bd, ar);

  for (std::size_t sweep = 1;; ++sweep) {
    if (sweep > max_sweeps) {
      throw Error(ErrorCode::NonTermination,
                  "no tight permutation after " + std::to_string(max_sweeps) + " sweeps");
    }
    report.sweeps = sweep;
    std::size_t applied = 0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (!(std::fabs(q[k]) > limit)) continue;
      BidiagonalData next = apply_transposition(report.result, k, ar);
      if (options.check_monovariant) check_decrease(report.result, next, k);
      report.result = std::move(next);

      const double q_old = q[k];
      if (k >= 1) q[k - 1] = q_at(report.result, k - 1, ar);
      q[k] = q_at(report.result, k, ar);
      if (k + 1 < q.size()) q[k + 1] = q_at(report.result, k + 1, ar);
      if (options.record_trace) report.trace.push_back({sweep, k, q_old, q[k]});
      ++applied;
    }
    report.transpositions += applied;
    if (applied == 0) break;
  }
  return report;
}

}  // namespace jacobi
