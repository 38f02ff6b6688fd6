#include <gtest/gtest.h>

#include "edg/manifold.hpp"
#include "edg/oracles.hpp"
#include "edg/rng.hpp"

using namespace edg;

namespace {

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  CounterRng g(seed);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = g.normal();
  return m;
}

Matrix random_symmetric(int n, std::uint64_t seed) {
  const Matrix a = random_matrix(n, n, seed);
  return 0.5 * (a + a.transpose());
}

LowRankFactor random_factor(int n, int r, std::uint64_t seed) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, r, seed));
  LowRankFactor f;
  f.basis = qr.householderQ() * Matrix::Identity(n, r);
  f.spectrum = Vector::LinSpaced(r, 10.0, 3.0);
  return f;
}

double inner(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }

}  // namespace

TEST(Manifold, ProjectionMatchesThreeTermFormula) {
  const LowRankFactor f = random_factor(40, 3, 1);
  const Matrix y = random_symmetric(40, 2);
  const TangentVector t = project_tangent(f, y);
  EXPECT_LE((densify(f, t) - oracle::project_tangent_dense(f.basis, y)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((f.basis.transpose() * t.wing).norm(), 1e-10);
  EXPECT_NEAR(t.squared_norm(), densify(f, t).squaredNorm(), 1e-9);
}

TEST(Manifold, ProjectionFixesTangentElements) {
  const LowRankFactor f = random_factor(30, 3, 3);
  const Matrix z = random_matrix(30, 3, 4);
  const Matrix y = f.basis * z.transpose() + z * f.basis.transpose();
  EXPECT_LE((densify(f, project_tangent(f, y)) - y).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Manifold, ProjectionKillsComplement) {
  const LowRankFactor f = random_factor(30, 3, 5);
  const Matrix p = Matrix::Identity(30, 30) - f.basis * f.basis.transpose();
  const Matrix y = p * random_symmetric(30, 6) * p;
  const TangentVector t = project_tangent(f, y);
  EXPECT_LE(std::sqrt(t.squared_norm()), 1e-10);
}

TEST(Manifold, ProjectionIdempotentAndSelfAdjoint) {
  const LowRankFactor f = random_factor(35, 4, 7);
  const Matrix a = random_symmetric(35, 8);
  const Matrix b = random_symmetric(35, 9);
  const Matrix pa = densify(f, project_tangent(f, a));
  EXPECT_LE((densify(f, project_tangent(f, pa)) - pa).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(inner(pa, b), inner(a, densify(f, project_tangent(f, b))), 1e-10);
}

TEST(Manifold, HardThresholdOrdersByMagnitude) {
  Matrix y = Matrix::Zero(3, 3);
  y.diagonal() << 3, -2, 1;
  const LowRankFactor f = hard_threshold(y, 1);
  EXPECT_NEAR(f.spectrum(0), 3.0, 1e-15);
  EXPECT_NEAR(std::abs(f.basis(0, 0)), 1.0, 1e-15);
  EXPECT_GT(f.basis(0, 0), 0.0);
  const LowRankFactor two = hard_threshold(y, 2);
  EXPECT_NEAR(two.spectrum(1), -2.0, 1e-15);
}

TEST(Manifold, HardThresholdTieKeepsBoth) {
  Matrix y = Matrix::Zero(3, 3);
  y.diagonal() << 1, -1, 0;
  const LowRankFactor f = hard_threshold(y, 2);
  EXPECT_NEAR(std::abs(f.spectrum(0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(f.spectrum(1)), 1.0, 1e-15);
  EXPECT_NEAR(f.spectrum.sum(), 0.0, 1e-15);
  EXPECT_FALSE(f.rank_deficient);
  EXPECT_TRUE(hard_threshold(y, 3).rank_deficient);
}

TEST(Manifold, HardThresholdResidualMatchesSpectrum) {
  const Matrix y = random_symmetric(30, 10);
  const LowRankFactor f = hard_threshold(y, 4);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(y);
  std::vector<double> mags;
  for (int i = 0; i < 30; ++i) mags.push_back(std::abs(eig.eigenvalues()(i)));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double tail = 0.0;
  for (int i = 4; i < 30; ++i) tail += mags[i] * mags[i];
  EXPECT_NEAR((y - f.densify()).norm(), std::sqrt(tail), 1e-10);
  EXPECT_LE((f.basis.transpose() * f.basis - Matrix::Identity(4, 4)).norm(), 1e-10);
}

TEST(Manifold, EckartYoung) {
  const Matrix y = random_symmetric(20, 11);
  const double best = (y - hard_threshold(y, 3).densify()).norm();
  for (int s = 0; s < 100; ++s) {
    const Matrix b = random_matrix(20, 3, 100 + s);
    const Vector d = random_matrix(3, 1, 300 + s).col(0);
    EXPECT_LE(best, (y - b * d.asDiagonal() * b.transpose()).norm());
  }
}

TEST(Manifold, IterativeMatchesDense) {
  const Matrix x = oracle::random_gram(120, 3, 12) + 0.01 * random_symmetric(120, 13);
  const LowRankFactor dense = hard_threshold(x, 3);
  const LowRankFactor iter = hard_threshold([&](const Matrix& m) -> Matrix { return x * m; }, 120, 3);
  EXPECT_LE((dense.spectrum - iter.spectrum).cwiseAbs().maxCoeff(), 1e-8 * std::abs(dense.spectrum(0)));
  EXPECT_LE((dense.densify() - iter.densify()).norm(), 1e-8 * dense.frobenius_norm());
}

TEST(Manifold, RetractionTrivialCases) {
  const LowRankFactor f = random_factor(30, 3, 14);
  const TangentVector g = project_tangent(f, random_symmetric(30, 15));
  const LowRankFactor same = retract_structured(f, 0.0, g, 3);
  EXPECT_LE((same.densify() - f.densify()).norm(), 1e-10);
  const TangentVector zero{Matrix::Zero(3, 3), Matrix::Zero(30, 3)};
  EXPECT_LE((retract_structured(f, 1.0, zero, 3).densify() - f.densify()).norm(), 1e-10);
}

TEST(Manifold, RetractionMatchesDensePath) {
  const LowRankFactor f = random_factor(60, 3, 16);
  const TangentVector g = project_tangent(f, random_symmetric(60, 17));
  const LowRankFactor fast = retract_structured(f, 0.7, g, 3);
  const LowRankFactor slow = hard_threshold(f.densify() + 0.7 * densify(f, g), 3);
  EXPECT_LE((fast.densify() - slow.densify()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((fast.spectrum - slow.spectrum).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((fast.basis.transpose() * fast.basis - Matrix::Identity(3, 3)).norm(), 1e-10);
}

TEST(Manifold, ConditionNumber) {
  LowRankFactor f;
  f.basis = Matrix::Identity(4, 3);
  f.spectrum = Vector::Constant(3, 5.0);
  EXPECT_DOUBLE_EQ(condition_number(f), 1.0);
  f.basis = Matrix::Identity(4, 2);
  f.spectrum = Vector(2);
  f.spectrum << 10, 2;
  EXPECT_DOUBLE_EQ(condition_number(f), 5.0);
  f.rank_deficient = true;
  EXPECT_THROW(condition_number(f), std::domain_error);

  const Matrix x = oracle::random_gram(25, 3, 18);
  Eigen::JacobiSVD<Matrix> svd(x);
  const Vector s = svd.singularValues();
  EXPECT_NEAR(condition_number(hard_threshold(x, 3)), s(0) / s(2), 1e-9 * s(0) / s(2));
}

TEST(Manifold, FactoredDistance) {
  const LowRankFactor a = random_factor(30, 3, 19);
  LowRankFactor b = random_factor(30, 3, 20);
  EXPECT_NEAR(factored_distance(a, b), (a.densify() - b.densify()).norm(), 1e-10);
  EXPECT_NEAR(factored_distance(a, a), 0.0, 1e-12);
}

TEST(Manifold, Refactor) {
  const Matrix a = random_matrix(20, 3, 21);
  Vector d(3);
  d << 4, -2, 1;
  const LowRankFactor f = refactor(a, d, 3);
  EXPECT_LE((f.densify() - a * d.asDiagonal() * a.transpose()).norm(), 1e-10);
}
