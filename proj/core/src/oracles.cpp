#include "edg/oracles.hpp"

#include "edg/rng.hpp"

namespace edg::oracle {

Matrix dense_h(int n) {
  const auto pairs = all_pairs(n);
  const auto l = static_cast<Eigen::Index>(pairs.size());
  Matrix h(l, l);
  for (Eigen::Index a = 0; a < l; ++a) {
    const Matrix wa = w_basis(pairs[a], n);
    for (Eigen::Index b = 0; b < l; ++b) h(a, b) = (wa.array() * w_basis(pairs[b], n).array()).sum();
  }
  return h;
}

Matrix dense_h_inverse(int n) {
  const auto pairs = all_pairs(n);
  const auto l = static_cast<Eigen::Index>(pairs.size());
  Matrix h(l, l);
  for (Eigen::Index a = 0; a < l; ++a)
    for (Eigen::Index b = 0; b < l; ++b) h(a, b) = h_inverse_entry(pairs[a], pairs[b], n);
  return h;
}

Matrix r_omega_explicit(const Matrix& x, const SampleSet& omega) {
  const int n = omega.n();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& a : omega.draws()) {
    out += (w_basis(a, n).array() * x.array()).sum() * v_basis(a, n);
  }
  return out;
}

Matrix r_omega_star_explicit(const Matrix& y, const SampleSet& omega) {
  const int n = omega.n();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& a : omega.draws()) {
    out += (v_basis(a, n).array() * y.array()).sum() * w_basis(a, n);
  }
  return out;
}

Matrix sum_v_squared_bruteforce(int n) {
  Matrix out = Matrix::Zero(n, n);
  for (const auto& a : all_pairs(n)) {
    const Matrix v = v_basis(a, n);
    out += v * v;
  }
  return out;
}

Matrix project_tangent_dense(const Matrix& u, const Matrix& y) {
  const Matrix p = u * u.transpose();
  return p * y + y * p - p * y * p;
}

double rip_deviation_dense(const LowRankFactor& f, const SampleSet& omega) {
  const int n = omega.n();
  const double scale = static_cast<double>(pair_count(n)) / static_cast<double>(omega.size());
  const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
  Matrix j = Matrix::Identity(n, n);
  j.array() -= 1.0 / n;
  Matrix op(nn, nn);
  for (Eigen::Index k = 0; k < nn; ++k) {
    Matrix e = Matrix::Zero(n, n);
    e(k % n, k / n) = 1.0;
    // Orthogonal projection onto the zero-row-sum symmetric matrices.
    const Matrix s = j * (0.5 * (e + e.transpose())) * j;
    const Matrix t = project_tangent_dense(f.basis, s);
    const Matrix a = scale * project_tangent_dense(f.basis, r_omega(t, omega)) - t;
    op.col(k) = Eigen::Map<const Vector>(a.data(), nn);
  }
  Eigen::JacobiSVD<Matrix> svd(op);
  return svd.singularValues()(0);
}

Matrix random_centered_symmetric(int n, std::uint64_t seed) {
  CounterRng rng(seed, Stream::Perturbation);
  Matrix y(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) y(r, c) = rng.normal();
  return double_center(0.5 * (y + y.transpose()));
}

Matrix random_gram(int n, int r, std::uint64_t seed) {
  CounterRng rng(seed, Stream::Dataset);
  Matrix p(r, n);
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < r; ++k) p(k, c) = rng.normal();
  return gram_from_points(PointConfig(p)).entries;
}

}  // namespace edg::oracle
