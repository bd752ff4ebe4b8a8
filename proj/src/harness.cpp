#include "jacobi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "jacobi/coords.hpp"
#include "jacobi/reconstruct.hpp"
#include "jacobi/spectral.hpp"
#include "jacobi/tighten.hpp"

namespace jacobi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double measured_error(const SpectralData& d, Algorithm algo, const TridiagonalMatrix& truth,
                      const Arithmetic& ar, std::size_t& sweeps) {
  try {
    Reconstruction r = reconstruct(d, algo, ar);
    sweeps = r.sweeps;
    const double e = error_metric(r.matrix, truth);
    return std::isfinite(e) ? e : kInf;
  } catch (const Error&) {
    return kInf;
  }
}

double quantile(std::vector<double> sorted, double q) {
  // nearest rank
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

double median(const std::vector<double>& sorted) {
  const std::size_t m = sorted.size();
  if (m == 0) return 0.0;
  if (m % 2 == 1) return sorted[m / 2];
  return 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
}

void run_spectral_trial(const BenchmarkConfig& config, std::size_t trial, ExperimentReport& out) {
  const std::uint64_t seed = trial_seed(config.seed, trial);
  Rng rng(seed);
  const TridiagonalMatrix t = config.experiment == Experiment::laplacian
                                  ? perturbed_laplacian(config.n, config.sigma, rng)
                                  : random_jacobi(config.n, rng);
  std::optional<SpectralData> d;
  try {
    d = norming_constants(t);
  } catch (const Error&) {
  }
  for (Algorithm algo : {Algorithm::bg2, Algorithm::bi2}) {
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = seed;
    rec.n = config.n;
    rec.algo = to_string(algo);
    rec.digits = config.digits;
    rec.error = kInf;
    if (d) {
      OpCounter counter;
      const Arithmetic ar(ScalarMode::with_digits(config.digits), &counter);
      rec.error = measured_error(*d, algo, t, ar, rec.sweeps);
      rec.products = counter.products_and_quotients;
      rec.sqrts = counter.square_roots;
    }
    rec.failure = !(rec.error <= kFailureThreshold);
    out.records.push_back(std::move(rec));
  }
}

void run_permutation_trial(const BenchmarkConfig& config, std::size_t trial,
                           ExperimentReport& out) {
  const std::uint64_t seed = trial_seed(config.seed, trial);
  Rng rng(seed);
  const TridiagonalMatrix t = random_jacobi(config.n, rng);

  auto record = [&](const char* algo, double error, std::size_t sweeps, OpCounter ops) {
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = seed;
    rec.n = config.n;
    rec.algo = algo;
    rec.digits = config.digits;
    rec.error = error;
    rec.failure = !(error <= kFailureThreshold);
    rec.sweeps = sweeps;
    rec.products = ops.products_and_quotients;
    rec.sqrts = ops.square_roots;
    out.records.push_back(std::move(rec));
  };

  try {
    const SpectralData d = norming_constants(t);
    const PermutationSweep sweep = permutation_sweep(d, config.digits);
    const PermutationSummary s = summarize(sweep);
    OpCounter counter;
    const Arithmetic ar(ScalarMode::with_digits(config.digits), &counter);
    std::size_t sweeps = 0;
    const double pipeline = measured_error(d, Algorithm::bi, sweep.reference, ar, sweeps);
    record("bi_best", s.best, 0, {});
    record("bi_worst", s.worst, 0, {});
    record("bi_tight_best", s.best_tight, 0, {});
    record("bi", pipeline, sweeps, counter);
  } catch (const Error&) {
    for (const char* algo : {"bi_best", "bi_worst", "bi_tight_best", "bi"}) record(algo, kInf, 0, {});
  }
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ (trial + 1) * 0xD1B54A32D192ED03ULL);
}

double Rng::uniform() {
  // (k + 0.5) / 2^53 lies strictly inside (0, 1)
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

TridiagonalMatrix random_jacobi(std::size_t n, Rng& rng) {
  if (n == 0) throw Error(ErrorCode::DimensionTooSmall, "n must be positive");
  std::vector<double> a(n);
  std::vector<double> b(n - 1);
  for (double& x : a) x = rng.normal();
  for (double& x : b) {
    do {
      x = std::fabs(rng.normal());
    } while (x == 0.0);
  }
  return {std::move(a), std::move(b)};
}

TridiagonalMatrix perturbed_laplacian(std::size_t n, double sigma, Rng& rng) {
  if (n == 0) throw Error(ErrorCode::DimensionTooSmall, "n must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be a finite nonnegative number");
  }
  std::vector<double> b(n - 1);
  for (double& x : b) {
    do {
      x = 1.0 + sigma * rng.normal();
    } while (!(x > 0.0));
  }
  return {std::vector<double>(n, 0.0), std::move(b)};
}

PermutationSweep permutation_sweep(const SpectralData& d, int digits) {
  const SpectralData valid = validate_spectral(d);
  const std::size_t n = valid.size();
  if (n > 9) throw Error(ErrorCode::InvalidArgument, "permutation sweep is limited to n <= 9");

  PermutationSweep sweep{two_sided(valid, Engine::bi), {}};
  const Arithmetic ar(ScalarMode::with_digits(digits));

  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  do {
    Permutation pi(map);
    const bool tight = is_tight(w_to_beta(valid, pi));
    PermutationRow row{pi, kInf, tight, false};
    try {
      const TridiagonalMatrix t = inverse_bidiagonal(w_to_beta(valid, pi, ar), ar);
      row.error = error_metric(t, sweep.reference);
      if (!std::isfinite(row.error)) {
        row.error = kInf;
        row.breakdown = true;
      }
    } catch (const Error& e) {
      if (!e.is_numerical()) throw;
      row.breakdown = true;
    }
    sweep.rows.push_back(std::move(row));
  } while (std::next_permutation(map.begin(), map.end()));
  return sweep;
}

PermutationSummary summarize(const PermutationSweep& sweep) {
  PermutationSummary s;
  s.best = kInf;
  s.best_tight = kInf;
  s.worst = 0.0;
  s.worst_tight = 0.0;
  for (const PermutationRow& row : sweep.rows) {
    if (row.breakdown) {
      ++s.breakdowns;
      continue;
    }
    s.best = std::min(s.best, row.error);
    s.worst = std::max(s.worst, row.error);
    if (row.tight) {
      ++s.tight_count;
      s.best_tight = std::min(s.best_tight, row.error);
      s.worst_tight = std::max(s.worst_tight, row.error);
    }
  }
  return s;
}

Experiment parse_experiment(const std::string& name) {
  if (name == "random") return Experiment::random;
  if (name == "laplacian") return Experiment::laplacian;
  if (name == "permutations") return Experiment::permutations;
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + name + "'");
}

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::random: return "random";
    case Experiment::laplacian: return "laplacian";
    case Experiment::permutations: return "permutations";
  }
  return "?";
}

std::vector<AlgoSummary> summarize(const ExperimentReport& report) {
  std::vector<AlgoSummary> out;
  std::vector<std::vector<double>> errors;
  for (const TrialRecord& rec : report.records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const AlgoSummary& s) { return s.algo == rec.algo; });
    if (it == out.end()) {
      out.push_back(AlgoSummary{rec.algo});
      errors.emplace_back();
      it = out.end() - 1;
    }
    const auto idx = static_cast<std::size_t>(it - out.begin());
    ++it->runs;
    if (rec.failure) ++it->failures;
    errors[idx].push_back(rec.error);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<double>& e = errors[i];
    std::sort(e.begin(), e.end());
    out[i].min = e.front();
    out[i].median = median(e);
    out[i].p90 = quantile(e, 0.9);
    out[i].max = e.back();
  }
  return out;
}

ExperimentReport benchmark(const BenchmarkConfig& config) {
  ScalarMode::with_digits(config.digits);
  if (config.n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (config.experiment == Experiment::permutations && config.n > 9) {
    throw Error(ErrorCode::InvalidArgument, "permutations experiment is limited to n <= 9");
  }
  ExperimentReport report;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    if (config.experiment == Experiment::permutations) {
      run_permutation_trial(config, trial, report);
    } else {
      run_spectral_trial(config, trial, report);
    }
  }
  return report;
}

OpCounter count_ops(const BidiagonalData& bd) {
  OpCounter counter;
  const Arithmetic ar(ScalarMode{}, &counter);
  BiOptions options;
  options.check_positive = false;
  inverse_bidiagonal_run(bd, options, ar);
  return counter;
}

}  // namespace jacobi
