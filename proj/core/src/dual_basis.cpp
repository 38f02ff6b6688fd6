#include "edg/dual_basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace edg {

std::int64_t pair_count(int n) {
  return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

std::int64_t pair_index(IndexPair a, int n) {
  const std::int64_t i = a.i;
  return i * n - i * (i + 1) / 2 + (a.j - a.i - 1);
}

IndexPair pair_from_index(std::int64_t k, int n) {
  int i = 0;
  std::int64_t row = n - 1;
  while (k >= row) {
    k -= row;
    ++i;
    --row;
  }
  return {i, static_cast<int>(i + 1 + k)};
}

std::vector<IndexPair> all_pairs(int n) {
  std::vector<IndexPair> out;
  out.reserve(static_cast<std::size_t>(pair_count(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

SampleSet::SampleSet(int n, std::vector<IndexPair> draws) : n_(n), draws_(std::move(draws)) {
  if (n < 2) throw std::invalid_argument("SampleSet needs n >= 2");
  if (draws_.empty()) throw std::invalid_argument("SampleSet must contain at least one pair");
  for (const auto& a : draws_) {
    if (a.i < 0 || a.i >= a.j || a.j >= n) {
      throw std::invalid_argument("invalid pair (" + std::to_string(a.i + 1) + ", " +
                                  std::to_string(a.j + 1) + ") for n = " + std::to_string(n));
    }
  }
  std::vector<IndexPair> sorted = draws_;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& a : sorted) {
    if (!pairs_.empty() && pairs_.back() == a) {
      ++counts_.back();
    } else {
      pairs_.push_back(a);
      counts_.push_back(1);
    }
  }
}

std::int64_t SampleSet::find(IndexPair a) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), a);
  if (it == pairs_.end() || !(*it == a)) return -1;
  return it - pairs_.begin();
}

SampleSet full_sample_set(int n) { return SampleSet(n, all_pairs(n)); }

Matrix w_basis(IndexPair a, int n) {
  Matrix w = Matrix::Zero(n, n);
  w(a.i, a.i) = 1.0;
  w(a.j, a.j) = 1.0;
  w(a.i, a.j) = -1.0;
  w(a.j, a.i) = -1.0;
  return w;
}

Matrix v_basis(IndexPair a, int n) {
  Vector av = Vector::Constant(n, -1.0 / n);
  Vector bv = av;
  av(a.i) += 1.0;
  bv(a.j) += 1.0;
  return -0.5 * (av * bv.transpose() + bv * av.transpose());
}

double h_entry(IndexPair a, IndexPair b) {
  if (a == b) return 4.0;
  const bool share = a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j;
  return share ? 1.0 : 0.0;
}

double h_inverse_entry(IndexPair a, IndexPair b, int n) {
  const double nn = static_cast<double>(n);
  if (a == b) return 0.5 * (1.0 - 2.0 / nn + 2.0 / (nn * nn));  // = |v_a|_F^2
  const bool share = a.i == b.i || a.i == b.j || a.j == b.i || a.j == b.j;
  if (share) return -1.0 / (2.0 * nn) + 1.0 / (nn * nn);
  return 1.0 / (nn * nn);
}

double inner_w(const Matrix& y, IndexPair a) {
  return y(a.i, a.i) + y(a.j, a.j) - y(a.i, a.j) - y(a.j, a.i);
}

double inner_v(const Matrix& y, const Vector& row_sums, double total, IndexPair a) {
  const double n = static_cast<double>(y.rows());
  return -(y(a.i, a.j) - row_sums(a.i) / n - row_sums(a.j) / n + total / (n * n));
}

Matrix r_omega_from_values(const SampleSet& omega, const std::vector<double>& values) {
  std::vector<double> coef(values.size());
  for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = omega.counts()[k] * values[k];
  return v_sum_dense(omega, coef);
}

Matrix r_omega(const Matrix& x, const SampleSet& omega) {
  std::vector<double> values;
  values.reserve(omega.pairs().size());
  for (const auto& a : omega.pairs()) values.push_back(inner_w(x, a));
  return r_omega_from_values(omega, values);
}

Matrix r_omega_star(const Matrix& y, const SampleSet& omega) {
  const int n = omega.n();
  const Vector rows = 0.5 * (y.rowwise().sum() + y.colwise().sum().transpose());
  const double total = y.sum();
  Matrix out = Matrix::Zero(n, n);
  const auto& pairs = omega.pairs();
  const auto& counts = omega.counts();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const IndexPair a = pairs[k];
    // v_a is symmetric, so only the symmetric part of y contributes.
    const double yij = 0.5 * (y(a.i, a.j) + y(a.j, a.i));
    const double nn = static_cast<double>(n);
    const double g = -counts[k] * (yij - rows(a.i) / nn - rows(a.j) / nn + total / (nn * nn));
    out(a.i, a.i) += g;
    out(a.j, a.j) += g;
    out(a.i, a.j) -= g;
    out(a.j, a.i) -= g;
  }
  return out;
}

Matrix f_omega(const Matrix& y, const SampleSet& omega) {
  const int n = omega.n();
  Matrix out = Matrix::Zero(n, n);
  const auto& pairs = omega.pairs();
  const auto& counts = omega.counts();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const IndexPair a = pairs[k];
    const double g = counts[k] * inner_w(y, a);
    out(a.i, a.i) += g;
    out(a.j, a.j) += g;
    out(a.i, a.j) -= g;
    out(a.j, a.i) -= g;
  }
  return out;
}

Matrix sum_v_squared(int n) {
  if (n < 2) throw std::invalid_argument("sum_v_squared needs n >= 2");
  const double nn = static_cast<double>(n);
  const double c = (nn * nn - 2.0 * nn + 2.0) / (4.0 * nn);
  Matrix j = Matrix::Identity(n, n);
  j.array() -= 1.0 / nn;
  return c * j;
}

Matrix pair_sym_product(const SampleSet& omega, const std::vector<double>& coef, const Matrix& m) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  const auto& pairs = omega.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const IndexPair a = pairs[k];
    out.row(a.i) += coef[k] * m.row(a.j);
    out.row(a.j) += coef[k] * m.row(a.i);
  }
  return out;
}

Matrix w_sum_product(const SampleSet& omega, const std::vector<double>& coef, const Matrix& m) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  const auto& pairs = omega.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const IndexPair a = pairs[k];
    const auto diff = (coef[k] * (m.row(a.i) - m.row(a.j))).eval();
    out.row(a.i) += diff;
    out.row(a.j) -= diff;
  }
  return out;
}

Matrix v_sum_product(const SampleSet& omega, const std::vector<double>& coef, const Matrix& m) {
  Matrix jm = m.rowwise() - m.colwise().mean();
  Matrix s = pair_sym_product(omega, coef, jm);
  s.rowwise() -= s.colwise().mean();
  return -0.5 * s;
}

Matrix v_sum_dense(const SampleSet& omega, const std::vector<double>& coef) {
  const int n = omega.n();
  Matrix s = Matrix::Zero(n, n);
  const auto& pairs = omega.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    s(pairs[k].i, pairs[k].j) += coef[k];
    s(pairs[k].j, pairs[k].i) += coef[k];
  }
  return -0.5 * double_center(s);
}

}  // namespace edg
