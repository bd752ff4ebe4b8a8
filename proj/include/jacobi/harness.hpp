#pragma once

// Experiment harness: seeded generators, the permutation sweep, the
// two-sided benchmarks under emulated precision, and operation counts.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jacobi/arithmetic.hpp"
#include "jacobi/core.hpp"

namespace jacobi {

/// A run whose error exceeds this is a failure.
inline constexpr double kFailureThreshold = 0.1;

/// Derives the stream seed of one trial. splitmix64 of (seed, trial), so a
/// trial's draws do not depend on which other trials ran before it.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// std::mt19937_64 with its own uniform and Box-Muller normal conversions
/// (the standard distributions are implementation defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1), 53 random bits.
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// a_i ~ N(0,1), b_i = |N(0,1)| (redrawn on an exact zero).
TridiagonalMatrix random_jacobi(std::size_t n, Rng& rng);

/// a_i = 0, b_i = 1 + N(0, sigma^2) redrawn until positive.
TridiagonalMatrix perturbed_laplacian(std::size_t n, double sigma, Rng& rng);

struct PermutationRow {
  Permutation pi;
  double error;  // +inf on breakdown
  bool tight;
  bool breakdown;
};

struct PermutationSweep {
  TridiagonalMatrix reference;
  std::vector<PermutationRow> rows;
};

/// Runs w_to_beta + inverse_bidiagonal under `digits` for every permutation
/// of {1..n} (n <= 9), measuring error against the native two-sided BI
/// reconstruction. Tightness is judged on native coordinates.
PermutationSweep permutation_sweep(const SpectralData& d, int digits);

struct PermutationSummary {
  double best = 0.0;        // over all permutations without breakdown
  double worst = 0.0;       // ditto
  double best_tight = 0.0;  // over tight permutations
  double worst_tight = 0.0;
  std::size_t tight_count = 0;
  std::size_t breakdowns = 0;
};

PermutationSummary summarize(const PermutationSweep& sweep);

enum class Experiment { random, laplacian, permutations };

Experiment parse_experiment(const std::string& name);
const char* to_string(Experiment e);

struct BenchmarkConfig {
  Experiment experiment = Experiment::random;
  std::size_t n = 40;
  std::size_t trials = 40;
  int digits = 12;
  double sigma = 0.01;
  std::uint64_t seed = 1;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string algo;
  int digits = 0;
  double error = 0.0;
  bool failure = false;
  std::size_t sweeps = 0;
  std::uint64_t products = 0;
  std::uint64_t sqrts = 0;

  bool operator==(const TrialRecord&) const = default;
};

struct ExperimentReport {
  std::vector<TrialRecord> records;

  bool operator==(const ExperimentReport&) const = default;
};

struct AlgoSummary {
  std::string algo;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double min = 0.0;
  double median = 0.0;
  double p90 = 0.0;
  double max = 0.0;
};

/// One entry per algorithm, in order of first appearance.
std::vector<AlgoSummary> summarize(const ExperimentReport& report);

/// random / laplacian: per trial, generate T, forward-solve natively, run bg2
/// and bi2 under `digits`, and record the error against T. Breakdowns become
/// failures with infinite error.
/// permutations: per trial, a random Jacobi matrix of size n <= 9 goes
/// through permutation_sweep; rows bi_best, bi_worst, bi_tight_best and bi
/// (the tightened pipeline permutation) are recorded against the same
/// reference.
ExperimentReport benchmark(const BenchmarkConfig& config);

/// Counted products/quotients and square roots of inverse_bidiagonal on bd
/// (r~_1 plus the recursion; tightening excluded). Counts do not depend on
/// the values, so a run that would break down is counted to the end.
OpCounter count_ops(const BidiagonalData& bd);

}  // namespace jacobi
