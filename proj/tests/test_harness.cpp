#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "expect_error.hpp"
#include "jacobi/coords.hpp"
#include "jacobi/harness.hpp"
#include "jacobi/spectral.hpp"
#include "jacobi/tighten.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

std::size_t failures(const ExperimentReport& report, const std::string& algo) {
  std::size_t count = 0;
  for (const TrialRecord& r : report.records) count += r.algo == algo && r.failure;
  return count;
}

}  // namespace

TEST(Rng, DeterministicPerSeed) {
  Rng a(42);
  Rng b(42);
  Rng c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    differs = differs || x != c.normal();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, UniformAndNormalMoments) {
  Rng rng(7);
  double sum = 0.0;
  double sum2 = 0.0;
  double usum = 0.0;
  const int m = 100000;
  for (int i = 0; i < m; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    usum += u;
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  EXPECT_NEAR(usum / m, 0.5, 0.01);
  EXPECT_NEAR(sum / m, 0.0, 0.02);
  EXPECT_NEAR(sum2 / m, 1.0, 0.02);
}

TEST(TrialSeed, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint64_t trial = 0; trial < 50; ++trial) seen.insert(trial_seed(seed, trial));
  }
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(trial_seed(3, 5), trial_seed(3, 5));
}

TEST(RandomJacobi, DeterministicAndJacobi) {
  Rng a(9);
  Rng b(9);
  EXPECT_EQ(random_jacobi(5, a), random_jacobi(5, b));
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) EXPECT_TRUE(random_jacobi(8, rng).is_jacobi());
  EXPECT_ERROR(random_jacobi(0, rng), ErrorCode::DimensionTooSmall);
}

TEST(RandomJacobi, DiagonalIsCentred) {
  Rng rng(11);
  double sum = 0.0;
  double bsum = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws / 10; ++i) {
    const TridiagonalMatrix t = random_jacobi(10, rng);
    for (double a : t.diagonal()) sum += a;
    for (double b : t.off_diagonal()) bsum += b;
  }
  EXPECT_NEAR(sum / draws, 0.0, 0.05);
  // E|N(0,1)| = sqrt(2/pi)
  EXPECT_NEAR(bsum / (draws * 9 / 10), std::sqrt(2 / std::numbers::pi), 0.05);
}

TEST(PerturbedLaplacian, Examples) {
  Rng rng(12);
  EXPECT_EQ(perturbed_laplacian(5, 0.0, rng), TridiagonalMatrix({0, 0, 0, 0, 0}, {1, 1, 1, 1}));
  for (int trial = 0; trial < 100; ++trial) EXPECT_TRUE(perturbed_laplacian(10, 0.5, rng).is_jacobi());
  const SpectralData d = norming_constants(perturbed_laplacian(4, 0.0, rng));
  for (int k = 4; k >= 1; --k) {
    EXPECT_NEAR(d.lambda[4 - k], 2 * std::cos(k * std::numbers::pi / 5), 1e-14);
  }
  EXPECT_ERROR(perturbed_laplacian(4, -1.0, rng), ErrorCode::InvalidArgument);
}

TEST(PermutationSweep, TwoByTwo) {
  const double r = 1 / std::sqrt(2.0);
  const PermutationSweep sweep = permutation_sweep(SpectralData({0, 2}, {r, r}), 8);
  ASSERT_EQ(sweep.rows.size(), 2u);
  EXPECT_LT(error_metric(sweep.reference, TridiagonalMatrix({1, 1}, {1})), 1e-15);
  for (const PermutationRow& row : sweep.rows) {
    EXPECT_FALSE(row.breakdown);
    EXPECT_LT(row.error, 1e-7);
    EXPECT_TRUE(row.tight);  // |q| = 1
  }
}

TEST(PermutationSweep, Guards) {
  oracle::Gen gen(81);
  EXPECT_ERROR(permutation_sweep(gen.spectral(10), 8), ErrorCode::InvalidArgument);
  EXPECT_ERROR(permutation_sweep(gen.spectral(3), 2), ErrorCode::InvalidArgument);
}

TEST(PermutationSweep, TagsTightnessAndSpreadsErrors) {
  Rng rng(trial_seed(82, 0));
  const SpectralData d = norming_constants(random_jacobi(6, rng));
  const PermutationSweep sweep = permutation_sweep(d, 8);
  ASSERT_EQ(sweep.rows.size(), 720u);
  std::set<std::vector<int>> seen;
  for (const PermutationRow& row : sweep.rows) {
    seen.insert(row.pi.one_line());
    EXPECT_EQ(row.tight, is_tight(w_to_beta(d, row.pi)));
    EXPECT_EQ(row.breakdown, std::isinf(row.error));
  }
  EXPECT_EQ(seen.size(), 720u);
  const PermutationSummary s = summarize(sweep);
  EXPECT_GE(s.tight_count, 1u);
  EXPECT_LE(s.best, s.best_tight);
  EXPECT_LE(s.best_tight, 10 * s.best);
  EXPECT_GE(s.worst, s.worst_tight);
  // the tightened pipeline ends at one of the tight permutations
  const BidiagonalData tight = tighten(w_to_beta(d, initial_permutation(d))).result;
  bool found = false;
  for (const PermutationRow& row : sweep.rows) found = found || (row.pi == tight.pi && row.tight);
  EXPECT_TRUE(found);
}

TEST(Benchmark, ZeroTrialsIsEmpty) {
  BenchmarkConfig config;
  config.trials = 0;
  EXPECT_TRUE(benchmark(config).records.empty());
}

TEST(Benchmark, RejectsBadConfig) {
  BenchmarkConfig config;
  config.digits = 2;
  EXPECT_ERROR(benchmark(config), ErrorCode::InvalidArgument);
  config.digits = 8;
  config.n = 0;
  EXPECT_ERROR(benchmark(config), ErrorCode::InvalidArgument);
  config.n = 10;
  config.experiment = Experiment::permutations;
  EXPECT_ERROR(benchmark(config), ErrorCode::InvalidArgument);
}

TEST(Benchmark, RecordsAndDeterminism) {
  BenchmarkConfig config;
  config.n = 12;
  config.trials = 5;
  config.digits = 10;
  config.seed = 3;
  const ExperimentReport a = benchmark(config);
  EXPECT_EQ(a, benchmark(config));
  ASSERT_EQ(a.records.size(), 10u);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const TrialRecord& r = a.records[i];
    EXPECT_EQ(r.trial, i / 2);
    EXPECT_EQ(r.seed, trial_seed(3, i / 2));
    EXPECT_EQ(r.algo, i % 2 == 0 ? "bg2" : "bi2");
    EXPECT_EQ(r.n, 12u);
    EXPECT_EQ(r.digits, 10);
    EXPECT_EQ(r.failure, !(r.error <= kFailureThreshold));
    EXPECT_GT(r.products, 0u);
  }
  config.seed = 4;
  EXPECT_NE(a, benchmark(config));
}

TEST(Benchmark, TrialsDoNotDependOnEachOther) {
  BenchmarkConfig config;
  config.n = 10;
  config.trials = 6;
  const ExperimentReport all = benchmark(config);
  config.trials = 3;
  const ExperimentReport head = benchmark(config);
  for (std::size_t i = 0; i < head.records.size(); ++i) EXPECT_EQ(head.records[i], all.records[i]);
}

TEST(Benchmark, LaplacianHasNoFailures) {
  BenchmarkConfig config;
  config.experiment = Experiment::laplacian;
  config.n = 20;
  config.trials = 5;
  for (const TrialRecord& r : benchmark(config).records) EXPECT_FALSE(r.failure);
}

TEST(Benchmark, MoreDigitsDoNotAddFailures) {
  BenchmarkConfig config;
  config.n = 30;
  config.trials = 20;
  config.digits = 8;
  const std::size_t low = failures(benchmark(config), "bi2");
  config.digits = 12;
  const std::size_t high = failures(benchmark(config), "bi2");
  EXPECT_GE(low, high);
}

TEST(Benchmark, PermutationsExperiment) {
  BenchmarkConfig config;
  config.experiment = Experiment::permutations;
  config.n = 5;
  config.trials = 2;
  config.digits = 8;
  const ExperimentReport r = benchmark(config);
  ASSERT_EQ(r.records.size(), 8u);
  const char* names[] = {"bi_best", "bi_worst", "bi_tight_best", "bi"};
  for (std::size_t i = 0; i < r.records.size(); ++i) EXPECT_EQ(r.records[i].algo, names[i % 4]);
  for (std::size_t t = 0; t < 2; ++t) {
    EXPECT_LE(r.records[4 * t].error, r.records[4 * t + 1].error);
    EXPECT_LE(r.records[4 * t].error, r.records[4 * t + 2].error);
  }
}

TEST(Summarize, NearestRankQuantiles) {
  ExperimentReport report;
  for (int i = 1; i <= 10; ++i) {
    TrialRecord r;
    r.algo = "x";
    r.error = i;
    r.failure = i > 8;
    report.records.push_back(r);
  }
  TrialRecord other;
  other.algo = "y";
  other.error = 0.5;
  report.records.push_back(other);
  const auto s = summarize(report);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].algo, "x");
  EXPECT_EQ(s[0].runs, 10u);
  EXPECT_EQ(s[0].failures, 2u);
  EXPECT_EQ(s[0].min, 1.0);
  EXPECT_EQ(s[0].median, 5.5);
  EXPECT_EQ(s[0].p90, 9.0);
  EXPECT_EQ(s[0].max, 10.0);
  EXPECT_EQ(s[1].median, 0.5);
}

TEST(CountOps, Examples) {
  const OpCounter one = count_ops(BidiagonalData{Permutation::identity(1), {3}, {}});
  EXPECT_EQ(one.products_and_quotients, 0u);
  EXPECT_EQ(one.square_roots, 0u);
  oracle::Gen gen(83);
  for (std::size_t n : {2u, 5u, 16u, 64u}) {
    const OpCounter c = count_ops(gen.bidiagonal(n));
    EXPECT_EQ(c.square_roots, n - 1);
    if (n >= 8) {
      EXPECT_LE(c.products_and_quotients, 4 * n * n);
      const double ratio = static_cast<double>(c.products_and_quotients) / static_cast<double>(n * n);
      EXPECT_GE(ratio, 2.5);
      EXPECT_LE(ratio, 4.5);
    }
  }
}

TEST(CountOps, IndependentOfTheValues) {
  oracle::Gen gen(84);
  const OpCounter a = count_ops(gen.bidiagonal(20));
  BidiagonalData zero = gen.bidiagonal(20);
  for (double& b : zero.beta) b = 0.0;
  const OpCounter b = count_ops(zero);
  EXPECT_EQ(a.products_and_quotients, b.products_and_quotients);
  EXPECT_EQ(a.square_roots, b.square_roots);
}

TEST(Experiment, ParseAndName) {
  for (Experiment e : {Experiment::random, Experiment::laplacian, Experiment::permutations}) {
    EXPECT_EQ(parse_experiment(to_string(e)), e);
  }
  EXPECT_ERROR(parse_experiment("other"), ErrorCode::InvalidArgument);
}
