#include <gtest/gtest.h>

#include <sstream>

#include "edg/dual_basis.hpp"
#include "edg/oracles.hpp"
#include "edg/rng.hpp"
#include "edg/sample_io.hpp"
#include "edg/sampling.hpp"

using namespace edg;

namespace {
double inner(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }
}  // namespace

TEST(DualBasis, PairIndexing) {
  for (int n : {2, 3, 7}) {
    const auto pairs = all_pairs(n);
    ASSERT_EQ(static_cast<std::int64_t>(pairs.size()), pair_count(n));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      EXPECT_EQ(pair_index(pairs[k], n), static_cast<std::int64_t>(k));
      EXPECT_EQ(pair_from_index(static_cast<std::int64_t>(k), n), pairs[k]);
    }
  }
}

TEST(DualBasis, SampleSetValidation) {
  EXPECT_THROW(SampleSet(4, {}), std::invalid_argument);
  EXPECT_THROW(SampleSet(4, {{2, 1}}), std::invalid_argument);
  EXPECT_THROW(SampleSet(4, {{1, 4}}), std::invalid_argument);
  const SampleSet s(4, {{1, 2}, {0, 1}, {1, 2}});
  EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(s.distinct_size(), 2);
  EXPECT_EQ(s.counts()[s.find({1, 2})], 2);
  EXPECT_EQ(s.find({0, 3}), -1);
}

TEST(DualBasis, WBasisDefinition) {
  Matrix expected(3, 3);
  expected << 1, -1, 0, -1, 1, 0, 0, 0, 0;
  EXPECT_EQ(w_basis({0, 1}, 3), expected);
  EXPECT_DOUBLE_EQ(w_basis({2, 5}, 7).norm(), 2.0);
}

TEST(DualBasis, WInnerProductsMatchH) {
  const int n = 6;
  for (const auto& a : all_pairs(n))
    for (const auto& b : all_pairs(n)) EXPECT_EQ(inner(w_basis(a, n), w_basis(b, n)), h_entry(a, b));
  EXPECT_EQ(h_entry({0, 1}, {0, 1}), 4.0);
  EXPECT_EQ(h_entry({0, 1}, {0, 2}), 1.0);
  EXPECT_EQ(h_entry({0, 1}, {2, 3}), 0.0);
}

TEST(DualBasis, WPicksOutSquaredDistance) {
  const Matrix x = oracle::random_gram(10, 2, 3);
  const SqDistMatrix d = dist_from_gram({x});
  for (const auto& a : all_pairs(10)) EXPECT_NEAR(inner(x, w_basis(a, 10)), d.entries(a.i, a.j), 1e-12);
}

TEST(DualBasis, Biorthogonality) {
  for (int n = 3; n <= 8; ++n)
    for (const auto& a : all_pairs(n))
      for (const auto& b : all_pairs(n))
        EXPECT_NEAR(inner(w_basis(a, n), v_basis(b, n)), a == b ? 1.0 : 0.0, 1e-12);
}

TEST(DualBasis, VClosedFormEntry) {
  // a = (2/3, -1/3, -1/3), b = (-1/3, 2/3, -1/3): v_11 = -a_1 b_1 = 2/9.
  EXPECT_NEAR(v_basis({0, 1}, 3)(0, 0), 2.0 / 9.0, 1e-15);
  const Matrix v = v_basis({1, 3}, 6);
  EXPECT_LE((v * Vector::Ones(6)).norm(), 1e-15);
}

TEST(DualBasis, VIsExpansionOfWThroughHInverse) {
  const int n = 4;
  for (const auto& a : all_pairs(n)) {
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& b : all_pairs(n)) sum += h_inverse_entry(a, b, n) * w_basis(b, n);
    EXPECT_LE((sum - v_basis(a, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DualBasis, HInverseEntries) {
  // Oracle values come from dense inversion of H.
  EXPECT_NEAR(h_inverse_entry({0, 1}, {0, 1}, 3), oracle::dense_h(3).inverse()(0, 0), 1e-14);
  EXPECT_NEAR(h_inverse_entry({0, 1}, {0, 1}, 3), 5.0 / 18.0, 1e-15);
  EXPECT_NEAR(h_inverse_entry({0, 1}, {2, 3}, 4), 1.0 / 16.0, 1e-15);
  for (int n = 3; n <= 8; ++n) {
    EXPECT_LE((oracle::dense_h(n).inverse() - oracle::dense_h_inverse(n)).cwiseAbs().maxCoeff(), 1e-10);
    // The diagonal equals |v_a|_F^2.
    EXPECT_NEAR(h_inverse_entry({0, 1}, {0, 1}, n), v_basis({0, 1}, n).squaredNorm(), 1e-14);
  }
}

TEST(DualBasis, HSpectrum) {
  for (int n = 3; n <= 12; ++n) {
    Eigen::SelfAdjointEigenSolver<Matrix> h(oracle::dense_h(n), Eigen::EigenvaluesOnly);
    EXPECT_NEAR(h.eigenvalues().maxCoeff(), 2.0 * n, 1e-9);
    const double expected_min = n == 3 ? 3.0 : 2.0;
    EXPECT_NEAR(h.eigenvalues().minCoeff(), expected_min, 1e-9);
  }
}

TEST(DualBasis, SpectralNorms) {
  for (const auto& a : all_pairs(7)) {
    Eigen::SelfAdjointEigenSolver<Matrix> w(w_basis(a, 7)), v(v_basis(a, 7));
    EXPECT_NEAR(w.eigenvalues().cwiseAbs().maxCoeff(), 2.0, 1e-12);
    EXPECT_NEAR(v.eigenvalues().cwiseAbs().maxCoeff(), 0.5, 1e-12);
  }
}

TEST(DualBasis, RomegaSinglePair) {
  const Matrix x = oracle::random_gram(6, 2, 1);
  const SampleSet one(6, {{0, 1}});
  const double d01 = dist_from_gram({x}).entries(0, 1);
  EXPECT_LE((r_omega(x, one) - d01 * v_basis({0, 1}, 6)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(DualBasis, RomegaFullSetIsIdentityOnS) {
  const Matrix x = oracle::random_gram(12, 3, 2);
  EXPECT_LE((r_omega(x, full_sample_set(12)) - x).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DualBasis, RomegaFastMatchesExplicit) {
  const Matrix x = oracle::random_gram(50, 3, 4);
  const SampleSet omega = sample_uniform_replacement(50, 200, 5);
  ASSERT_TRUE(omega.has_repeats() || omega.size() == 200);
  EXPECT_LE((r_omega(x, omega) - oracle::r_omega_explicit(x, omega)).cwiseAbs().maxCoeff(), 1e-10);
  const Matrix out = r_omega(x, omega);
  EXPECT_LE((out * Vector::Ones(50)).norm(), 1e-10 * (1 + out.norm()));
}

TEST(DualBasis, RomegaStar) {
  const Matrix y = oracle::random_centered_symmetric(8, 6);
  const SampleSet one(8, {{2, 5}});
  const double c = inner(y, v_basis({2, 5}, 8));
  EXPECT_LE((r_omega_star(y, one) - c * w_basis({2, 5}, 8)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((r_omega_star(y, full_sample_set(8)) - y).cwiseAbs().maxCoeff(), 1e-10);
  const SampleSet omega = sample_uniform_replacement(30, 100, 7);
  const Matrix a = oracle::random_centered_symmetric(30, 8);
  const Matrix b = oracle::random_centered_symmetric(30, 9);
  EXPECT_NEAR(inner(r_omega(a, omega), b), inner(a, r_omega_star(b, omega)), 1e-10);
  EXPECT_LE((r_omega_star(b, omega) - oracle::r_omega_star_explicit(b, omega)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DualBasis, FrameOperator) {
  const SampleSet one(5, {{1, 3}});
  const Matrix y = oracle::random_centered_symmetric(5, 10);
  EXPECT_LE((f_omega(y, one) - inner(y, w_basis({1, 3}, 5)) * w_basis({1, 3}, 5)).cwiseAbs().maxCoeff(), 1e-14);

  const SampleSet omega = sample_uniform_replacement(20, 60, 11);
  CounterRng g(12);
  for (int t = 0; t < 100; ++t) {
    Matrix a(20, 20);
    for (int j = 0; j < 20; ++j)
      for (int i = 0; i < 20; ++i) a(i, j) = g.normal();
    a = 0.5 * (a + a.transpose()).eval();
    double direct = 0.0;
    for (const auto& p : omega.draws()) direct += std::pow(inner(a, w_basis(p, 20)), 2);
    const double q = inner(a, f_omega(a, omega));
    EXPECT_GE(q, 0.0);
    EXPECT_NEAR(q, direct, 1e-9 * (1 + direct));
  }
  const Matrix a = oracle::random_centered_symmetric(20, 13);
  const Matrix b = oracle::random_centered_symmetric(20, 14);
  EXPECT_NEAR(inner(f_omega(a, omega), b), inner(a, f_omega(b, omega)), 1e-10);
}

TEST(DualBasis, ObliqueProjection) {
  std::vector<IndexPair> chosen;
  for (const auto& a : all_pairs(15))
    if ((a.i + 2 * a.j) % 3 == 0) chosen.push_back(a);
  const SampleSet omega(15, chosen);
  const Matrix x = oracle::random_centered_symmetric(15, 15);
  const Matrix once = r_omega(x, omega);
  EXPECT_LE((r_omega(once, omega) - once).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DualBasis, SumVSquared) {
  EXPECT_LE((sum_v_squared(3) - (5.0 / 12.0) * (Matrix::Identity(3, 3) - Matrix::Constant(3, 3, 1.0 / 3))).norm(), 1e-15);
  EXPECT_LE((sum_v_squared(2) - 0.25 * (Matrix::Identity(2, 2) - Matrix::Constant(2, 2, 0.5))).norm(), 1e-15);
  for (int n = 3; n <= 15; ++n) {
    EXPECT_LE((oracle::sum_v_squared_bruteforce(n) - sum_v_squared(n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DualBasis, BlockKernelsMatchDense) {
  const int n = 25;
  const SampleSet omega = sample_uniform_replacement(n, 90, 16);
  std::vector<double> coef;
  CounterRng g(17);
  for (std::size_t k = 0; k < omega.pairs().size(); ++k) coef.push_back(g.normal());
  Matrix m(n, 4);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = g.normal();
  Matrix wsum = Matrix::Zero(n, n), vsum = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < coef.size(); ++k) {
    wsum += coef[k] * w_basis(omega.pairs()[k], n);
    vsum += coef[k] * v_basis(omega.pairs()[k], n);
  }
  EXPECT_LE((w_sum_product(omega, coef, m) - wsum * m).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((v_sum_product(omega, coef, m) - vsum * m).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((v_sum_dense(omega, coef) - vsum).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SampleIo, RoundTrip) {
  const SampleSet omega = sample_uniform_replacement(30, 500, 18);
  std::stringstream buf;
  write_samples(buf, omega);
  const SampleSet back = read_samples(buf, 30);
  EXPECT_EQ(back.pairs(), omega.pairs());
  EXPECT_EQ(back.counts(), omega.counts());
  EXPECT_EQ(back.size(), 500);
}

TEST(SampleIo, RejectsBadLines) {
  std::stringstream bad("1 2 1\n3 x\n");
  EXPECT_THROW(read_samples(bad, 5), std::runtime_error);
  std::stringstream range("1 9 1\n");
  EXPECT_THROW(read_samples(range, 5), std::runtime_error);
  std::stringstream empty("# nothing\n");
  EXPECT_THROW(read_samples(empty, 5), std::runtime_error);
}
