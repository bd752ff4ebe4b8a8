#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "expect_error.hpp"
#include "jacobi/coords.hpp"
#include "jacobi/harness.hpp"
#include "jacobi/reconstruct.hpp"
#include "jacobi/spectral.hpp"
#include "jacobi/tighten.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

const double kHalfRoot = 1.0 / std::sqrt(2.0);
const Algorithm kAllAlgorithms[] = {Algorithm::bg, Algorithm::bi, Algorithm::bg2, Algorithm::bi2,
                                    Algorithm::qr};

BidiagonalData identity_data(std::vector<double> lambda, std::vector<double> beta) {
  return BidiagonalData{Permutation::identity(lambda.size()), std::move(lambda), std::move(beta)};
}

SpectralData two_by_two() { return SpectralData({0, 2}, {kHalfRoot, kHalfRoot}); }

const TridiagonalMatrix kTwoByTwo({1, 1}, {1});

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST(Algorithm, ParseAndName) {
  for (Algorithm a : kAllAlgorithms) EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_ERROR(parse_algorithm("lanczos"), ErrorCode::InvalidArgument);
}

TEST(DeBoorGolub, TwoByTwo) {
  // a_1 = sum w^2 lambda = 1; p_1 = (-1, 1); b_1^2 = 1; a_2 = 1
  const StieltjesRun run = de_boor_golub_traced(two_by_two());
  EXPECT_LT(error_metric(run.matrix, kTwoByTwo), 1e-15);
  ASSERT_EQ(run.polynomials.size(), 2u);
  EXPECT_EQ(run.polynomials[0].values, (std::vector<double>{1, 1}));
  EXPECT_NEAR(run.polynomials[1].values[0], -1, 1e-15);
  EXPECT_NEAR(run.polynomials[1].values[1], 1, 1e-15);
  EXPECT_LT(error_metric(de_boor_golub(two_by_two()), kTwoByTwo), 1e-15);
}

TEST(DeBoorGolub, OneByOne) {
  EXPECT_EQ(de_boor_golub(SpectralData({7}, {1})), TridiagonalMatrix({7}, {}));
}

TEST(DeBoorGolub, RoundTrip) {
  oracle::Gen gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    const TridiagonalMatrix t = gen.tame_jacobi(gen.index(1, 10));
    EXPECT_LT(error_metric(de_boor_golub(norming_constants(t)), t), 1e-8);
    const SpectralData d = gen.spectral(gen.index(1, 10));
    EXPECT_LT(error_metric(de_boor_golub(d), oracle::lanczos(d)), 1e-8);
  }
}

TEST(DeBoorGolub, PolynomialsAreOrthogonal) {
  oracle::Gen gen(62);
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralData d = gen.spectral(gen.index(2, 12));
    const StieltjesRun run = de_boor_golub_traced(d);
    const auto& p = run.polynomials;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      const double nk1 = std::sqrt(weighted_inner(d, p[k + 1], p[k + 1]));
      EXPECT_LE(std::fabs(weighted_inner(d, p[k + 1], p[k])),
                1e-10 * nk1 * std::sqrt(weighted_inner(d, p[k], p[k])));
      if (k >= 1) {
        EXPECT_LE(std::fabs(weighted_inner(d, p[k + 1], p[k - 1])),
                  1e-10 * nk1 * std::sqrt(weighted_inner(d, p[k - 1], p[k - 1])));
      }
    }
  }
}

TEST(DeBoorGolub, BreaksDownWhenWeightsUnderflow) {
  const SpectralData d({0, 1, 2}, {1, 1e-170, 1e-170});
  EXPECT_ERROR(de_boor_golub(d), ErrorCode::NumericalBreakdown);
}

TEST(ComputeR1, Examples) {
  EXPECT_EQ(compute_r1(identity_data({3}, {})), (std::vector<double>{1}));
  const auto r = compute_r1(identity_data({0, 2}, {2}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], 2.0);
  EXPECT_EQ(r[1], 0.5);
  // beta = 0: reciprocal gap products of L_{pi,0} e_1
  const auto z = compute_r1(identity_data({1, 2, 4}, {0, 0}));
  EXPECT_EQ(z, (std::vector<double>{1, 1, 1.0 / 6}));
}

TEST(ComputeR1, MatchesMatrixProduct) {
  oracle::Gen gen(63);
  for (int trial = 0; trial < 100; ++trial) {
    const BidiagonalData bd = gen.bidiagonal(gen.index(1, 10));
    const Eigen::VectorXd want = oracle::r1(bd);
    const auto got = compute_r1(bd);
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i], want(i), 1e-12 * std::max(1.0, std::fabs(want(i))));
    }
  }
}

TEST(InverseBidiagonal, ChartCenterIsExact) {
  const TridiagonalMatrix t = inverse_bidiagonal(identity_data({1, 2, 4}, {0, 0}));
  EXPECT_EQ(t, TridiagonalMatrix({1, 2, 4}, {0, 0}));
  const BidiagonalData shuffled{Permutation::from_one_line(std::vector<int>{3, 1, 2}), {4, 1, 2}, {0, 0}};
  EXPECT_EQ(inverse_bidiagonal(shuffled), TridiagonalMatrix({4, 1, 2}, {0, 0}));
}

TEST(InverseBidiagonal, TwoByTwoHandTrace) {
  BiOptions options;
  options.keep_rows = true;
  options.check_triangular = true;
  const BiRun run = inverse_bidiagonal_run(identity_data({0, 2}, {2}), options);
  ASSERT_EQ(run.rows.size(), 2u);
  EXPECT_EQ(run.rows[0], (std::vector<double>{2, 0.5}));
  EXPECT_EQ(run.rows[1], (std::vector<double>{0, 0.5}));
  EXPECT_EQ(run.matrix, kTwoByTwo);
}

TEST(InverseBidiagonal, SignsFollowBeta) {
  const TridiagonalMatrix t = inverse_bidiagonal_signed(identity_data({0, 2}, {-2}));
  EXPECT_EQ(t, TridiagonalMatrix({1, 1}, {-1}));
  EXPECT_EQ(inverse_bidiagonal(identity_data({0, 2}, {-2})), kTwoByTwo);
  oracle::Gen gen(64);
  for (int trial = 0; trial < 100; ++trial) {
    const BidiagonalData bd = gen.bidiagonal(gen.index(2, 8));
    const TridiagonalMatrix s = inverse_bidiagonal_signed(bd);
    for (std::size_t i = 0; i + 1 < bd.size(); ++i) EXPECT_EQ(s.b(i) > 0, bd.beta[i] > 0);
  }
}

TEST(InverseBidiagonal, RowsStayTriangularAndPositive) {
  oracle::Gen gen(65);
  BiOptions options;
  options.keep_rows = true;
  options.check_triangular = true;
  for (int trial = 0; trial < 100; ++trial) {
    const BidiagonalData bd = gen.bidiagonal(gen.index(1, 10));
    const BiRun run = inverse_bidiagonal_run(bd, options);
    ASSERT_EQ(run.rows.size(), bd.size());
    for (std::size_t k = 0; k < bd.size(); ++k) {
      EXPECT_GT(run.rows[k][k], 0.0);
      for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(run.rows[k][j], 0.0);
    }
  }
}

TEST(InverseBidiagonal, RoundTripAtTightPermutations) {
  oracle::Gen gen(66);
  for (int trial = 0; trial < 100; ++trial) {
    const TridiagonalMatrix t = gen.tame_jacobi(gen.index(1, 10));
    const SpectralData d = norming_constants(t);
    const BidiagonalData bd = tighten(w_to_beta(d, initial_permutation(d))).result;
    EXPECT_LT(error_metric(inverse_bidiagonal(bd), t), 1e-8);
  }
}

TEST(InverseBidiagonal, ChartsAgreeAcrossTranspositions) {
  oracle::Gen gen(67);
  for (int trial = 0; trial < 100; ++trial) {
    const BidiagonalData bd = gen.bidiagonal(gen.index(2, 7));
    const std::size_t k = gen.index(0, bd.size() - 2);
    const BidiagonalData moved = apply_transposition(bd, k);
    EXPECT_LT(error_metric(inverse_bidiagonal(bd), inverse_bidiagonal(moved)), 1e-8);
  }
}

TEST(InverseBidiagonal, ConjugatesTheBidiagonalFactor) {
  // T = R B R^{-1} with R the triangular QR factor of L_pi
  oracle::Gen gen(68);
  for (int trial = 0; trial < 50; ++trial) {
    const BidiagonalData bd = gen.bidiagonal(gen.index(1, 8));
    const Eigen::MatrixXd l = oracle::unipotent(bd, 1);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(l);
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      if (r(i, i) < 0) r.row(i) *= -1;
    }
    const Eigen::MatrixXd want = r * oracle::bidiagonal(bd, 1) * r.inverse();
    const Eigen::MatrixXd got = oracle::to_eigen(inverse_bidiagonal_signed(bd));
    EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(QrOracle, Examples) {
  EXPECT_LT(error_metric(qr_oracle(identity_data({0, 2}, {2})), kTwoByTwo), 1e-15);
  EXPECT_LT(error_metric(qr_oracle(identity_data({1, 2, 4}, {0, 0})), TridiagonalMatrix({1, 2, 4}, {0, 0})),
            1e-15);
}

TEST(QrOracle, AgreesWithInverseBidiagonal) {
  oracle::Gen gen(69);
  for (int trial = 0; trial < 100; ++trial) {
    const BidiagonalData bd = gen.bidiagonal(gen.index(1, 8));
    EXPECT_LT(error_metric(qr_oracle_signed(bd), inverse_bidiagonal_signed(bd)), 1e-8);
  }
}

TEST(TwoSided, Examples) {
  for (Engine e : {Engine::bg, Engine::bi}) {
    EXPECT_LT(error_metric(two_sided(two_by_two(), e), kTwoByTwo), 1e-15);
    EXPECT_EQ(two_sided(SpectralData({3}, {1}), e), TridiagonalMatrix({3}, {}));
  }
}

TEST(TwoSided, RoundTrip) {
  oracle::Gen gen(70);
  for (int trial = 0; trial < 50; ++trial) {
    const TridiagonalMatrix t = gen.tame_jacobi(gen.index(1, 20));
    const SpectralData d = norming_constants(t);
    for (Engine e : {Engine::bg, Engine::bi}) EXPECT_LT(error_metric(two_sided(d, e), t), 1e-8);
  }
}

TEST(TwoSided, BeatsOneSidedOnRandomMatrices) {
  oracle::Gen gen(71);
  const Arithmetic ar(ScalarMode{12});
  std::vector<double> one;
  std::vector<double> two;
  for (int trial = 0; trial < 40; ++trial) {
    const TridiagonalMatrix t = random_jacobi(20, gen.rng);
    const SpectralData d = norming_constants(t);
    auto error = [&](Algorithm a) {
      try {
        return error_metric(reconstruct_from_w(d, a, ar), t);
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    one.push_back(error(Algorithm::bi));
    two.push_back(error(Algorithm::bi2));
  }
  EXPECT_LE(median(two), median(one));
}

TEST(TwoSided, NamesTheFailingDirection) {
  try {
    two_sided(SpectralData({0, 1, 2}, {1, 1e-170, 1e-170}), Engine::bg);
    ADD_FAILURE() << "expected a breakdown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NumericalBreakdown);
    EXPECT_NE(std::string(e.what()).find("forward direction"), std::string::npos) << e.what();
  }
}

TEST(Reconstruct, WorkedTwoByTwoForEveryAlgorithm) {
  for (Algorithm a : kAllAlgorithms) {
    EXPECT_LT(error_metric(reconstruct_from_w(two_by_two(), a), kTwoByTwo), 1e-12) << to_string(a);
  }
}

TEST(Reconstruct, ValidatesFirst) {
  for (Algorithm a : kAllAlgorithms) {
    EXPECT_ERROR(reconstruct_from_w(SpectralData({2, 0}, {kHalfRoot, kHalfRoot}), a),
                 ErrorCode::DuplicateOrUnsortedSpectrum);
    EXPECT_ERROR(reconstruct_from_w(SpectralData({0, 2}, {1, 1}), a), ErrorCode::NotNormalized);
  }
}

TEST(Reconstruct, AlgorithmsAgreeAndPreserveSpectrum) {
  oracle::Gen gen(72);
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralData d = gen.spectral(gen.index(1, 10));
    const double diameter = std::max(1.0, d.lambda.back() - d.lambda.front());
    std::vector<TridiagonalMatrix> out;
    for (Algorithm a : kAllAlgorithms) {
      out.push_back(reconstruct_from_w(d, a));
      const auto lambda = oracle::dense_spectrum(out.back()).lambda;
      for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_NEAR(lambda[i], d.lambda[i], 1e-8 * diameter) << to_string(a);
      }
      const SpectralData back = norming_constants(out.back());
      for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(back.w[i], d.w[i], 1e-8);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = i + 1; j < out.size(); ++j) EXPECT_LT(error_metric(out[i], out[j]), 1e-6);
    }
  }
}

TEST(Reconstruct, ReportsSweeps) {
  const Reconstruction r = reconstruct(SpectralData({1, 2, 4}, {0.8, 0.36, 0.48}), Algorithm::bi);
  EXPECT_GE(r.sweeps, 1u);
  EXPECT_EQ(reconstruct(two_by_two(), Algorithm::bg).sweeps, 0u);
}

TEST(Reconstruct, ReducedPrecisionStaysClose) {
  oracle::Gen gen(73);
  for (int trial = 0; trial < 30; ++trial) {
    const TridiagonalMatrix t = gen.tame_jacobi(gen.index(2, 8));
    const SpectralData d = norming_constants(t);
    for (Algorithm a : kAllAlgorithms) {
      const double e = error_metric(reconstruct_from_w(d, a, Arithmetic(ScalarMode{12})), t);
      EXPECT_LT(e, 1e-6) << to_string(a);
      EXPECT_GT(e, 0.0) << to_string(a);
    }
  }
}
