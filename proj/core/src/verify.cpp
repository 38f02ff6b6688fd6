#include "edg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "edg/diagnostics.hpp"
#include "edg/dual_basis.hpp"
#include "edg/oracles.hpp"
#include "edg/rng.hpp"
#include "edg/sampling.hpp"

namespace edg {

namespace {

CheckResult make(std::string name, double observed, double tol, std::string detail = {}) {
  return {std::move(name), observed <= tol, observed, tol, std::move(detail)};
}

double inner(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }

CheckResult biorthogonality() {
  double worst = 0.0;
  for (int n = 3; n <= 10; ++n) {
    const auto pairs = all_pairs(n);
    std::vector<Matrix> w, v;
    for (const auto& a : pairs) {
      w.push_back(w_basis(a, n));
      v.push_back(v_basis(a, n));
    }
    for (std::size_t a = 0; a < pairs.size(); ++a)
      for (std::size_t b = 0; b < pairs.size(); ++b)
        worst = std::max(worst, std::abs(inner(w[a], v[b]) - (a == b ? 1.0 : 0.0)));
  }
  return make("biorthogonality n=3..10", worst, 1e-12);
}

CheckResult h_inverse() {
  double worst = 0.0;
  for (int n = 3; n <= 10; ++n) {
    const Matrix numeric = oracle::dense_h(n).inverse();
    worst = std::max(worst, (numeric - oracle::dense_h_inverse(n)).cwiseAbs().maxCoeff());
  }
  return make("H inverse closed form n=3..10", worst, 1e-10);
}

CheckResult h_spectrum() {
  double worst = 0.0;
  for (int n = 3; n <= 12; ++n) {
    Eigen::SelfAdjointEigenSolver<Matrix> h(oracle::dense_h(n), Eigen::EigenvaluesOnly);
    worst = std::max(worst, std::abs(h.eigenvalues().maxCoeff() - 2.0 * n));
  }
  return make("lambda_max(H)=2n n=3..12", worst, 1e-9);
}

// For n = 3 every pair shares an index, L = n, and the smallest eigenvalue of
// H is 3 rather than 2, so the 1/2 value only holds from n = 4 on.
CheckResult h_inverse_spectrum() {
  double worst = 0.0;
  for (int n = 4; n <= 12; ++n) {
    Eigen::SelfAdjointEigenSolver<Matrix> hi(oracle::dense_h(n).inverse(), Eigen::EigenvaluesOnly);
    worst = std::max(worst, std::abs(hi.eigenvalues().maxCoeff() - 0.5));
  }
  return make("lambda_max(H^-1)=1/2 n=4..12", worst, 1e-9);
}

CheckResult basis_norms() {
  double worst = 0.0;
  for (int n = 3; n <= 10; ++n) {
    for (const auto& a : all_pairs(n)) {
      Eigen::SelfAdjointEigenSolver<Matrix> w(w_basis(a, n), Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<Matrix> v(v_basis(a, n), Eigen::EigenvaluesOnly);
      worst = std::max(worst, std::abs(w.eigenvalues().cwiseAbs().maxCoeff() - 2.0));
      worst = std::max(worst, std::abs(v.eigenvalues().cwiseAbs().maxCoeff() - 0.5));
    }
  }
  return make("spectral norms |w|=2, |v|=1/2", worst, 1e-12);
}

CheckResult sum_v_sq() {
  double worst = 0.0;
  for (int n = 2; n <= 15; ++n) {
    worst = std::max(worst, (oracle::sum_v_squared_bruteforce(n) - sum_v_squared(n)).cwiseAbs().maxCoeff());
  }
  return make("sum of v_a^2 closed form n=2..15", worst, 1e-12);
}

CheckResult expansion(std::uint64_t seed) {
  double worst = 0.0;
  for (int n = 3; n <= 30; ++n) {
    const Matrix x = oracle::random_centered_symmetric(n, seed + n);
    const Matrix back = r_omega(x, full_sample_set(n));
    worst = std::max(worst, (back - x).cwiseAbs().maxCoeff() / (1.0 + x.norm()));
  }
  return make("dual expansion X = sum <X,w>v n=3..30", worst, 1e-10);
}

CheckResult operator_equivalence(std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    const Matrix x = oracle::random_gram(50, 3, s);
    const SampleSet omega = sample_uniform_replacement(50, 200, s);
    const Matrix fast = r_omega(x, omega);
    const Matrix slow = oracle::r_omega_explicit(x, omega);
    worst = std::max(worst, (fast - slow).cwiseAbs().maxCoeff());
  }
  return make("R_Omega J-conjugation vs explicit sum (50 instances)", worst, 1e-10);
}

CheckResult adjoint(std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const std::uint64_t s = derive_seed(seed + 100, static_cast<std::uint64_t>(t));
    const Matrix a = oracle::random_centered_symmetric(30, s);
    const Matrix b = oracle::random_centered_symmetric(30, s + 1);
    const SampleSet omega = sample_uniform_replacement(30, 100, s);
    const double lhs = inner(r_omega(a, omega), b);
    const double rhs = inner(a, r_omega_star(b, omega));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return make("adjoint <R(A),B> = <A,R*(B)>", worst, 1e-10);
}

CheckResult oblique_projection(std::uint64_t seed) {
  const int n = 20;
  std::vector<IndexPair> pairs = all_pairs(n);
  CounterRng rng(seed, Stream::Sampling);
  std::vector<IndexPair> chosen;
  for (const auto& a : pairs)
    if (rng.uniform01() < 0.3) chosen.push_back(a);
  const SampleSet omega(n, chosen);
  const Matrix x = oracle::random_centered_symmetric(n, seed + 7);
  const Matrix once = r_omega(x, omega);
  const Matrix twice = r_omega(once, omega);
  return make("R_Omega idempotent without repeats", (twice - once).cwiseAbs().maxCoeff(), 1e-10);
}

CheckResult frame_psd(std::uint64_t seed) {
  const int n = 20;
  const SampleSet omega = sample_uniform_replacement(n, 80, seed);
  double worst_neg = 0.0;
  for (int t = 0; t < 100; ++t) {
    CounterRng rng(derive_seed(seed, static_cast<std::uint64_t>(t)), Stream::Perturbation);
    Matrix y(n, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) y(r, c) = rng.normal();
    y = 0.5 * (y + y.transpose()).eval();
    const double q = inner(y, f_omega(y, omega));
    worst_neg = std::max(worst_neg, -q);
  }
  return make("F_Omega positive semidefinite", worst_neg, 0.0);
}

CheckResult rip_dense(std::uint64_t seed) {
  const int n = 10;
  const Matrix x = oracle::random_gram(n, 3, seed);
  const LowRankFactor f = hard_threshold(x, 3);
  double worst = 0.0;
  for (std::int64_t m : {20, 45, 90}) {
    const SampleSet omega = sample_uniform_replacement(n, m, seed + static_cast<std::uint64_t>(m));
    const double dense = oracle::rip_deviation_dense(f, omega);
    const double power = rip_deviation(f, omega, 5000, 1e-13, seed).deviation;
    worst = std::max(worst, std::abs(dense - power) / std::max(1.0, dense));
  }
  return make("RIP power iteration vs dense operator n=10", worst, 1e-6);
}

}  // namespace

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(biorthogonality());
  out.push_back(h_inverse());
  out.push_back(h_spectrum());
  out.push_back(h_inverse_spectrum());
  out.push_back(basis_norms());
  out.push_back(sum_v_sq());
  out.push_back(expansion(seed));
  out.push_back(operator_equivalence(seed));
  out.push_back(adjoint(seed));
  out.push_back(oblique_projection(seed));
  out.push_back(frame_psd(seed));
  out.push_back(rip_dense(seed));
  return out;
}

}  // namespace edg
