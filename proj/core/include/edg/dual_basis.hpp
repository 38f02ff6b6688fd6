#pragma once

#include <cstdint>
#include <vector>

#include "edg/geometry.hpp"

namespace edg {

/// Strictly upper triangular index pair. Indices are 0-based in the library;
/// files and the CLI use 1-based indices.
struct IndexPair {
  int i = 0;
  int j = 1;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Number of strictly upper triangular pairs, L = n(n-1)/2.
std::int64_t pair_count(int n);
/// Position of (i, j) in row-major enumeration of the upper triangle.
std::int64_t pair_index(IndexPair a, int n);
IndexPair pair_from_index(std::int64_t k, int n);
std::vector<IndexPair> all_pairs(int n);

/// Multiset of pairs. Keeps the draws in sampling order (needed for the
/// resampled initialization) together with the distinct pairs in sorted order
/// and their multiplicities.
class SampleSet {
 public:
  SampleSet() = default;
  /// Throws std::invalid_argument on an empty list or an invalid pair.
  SampleSet(int n, std::vector<IndexPair> draws);

  int n() const { return n_; }
  /// Multiset cardinality m, repeats counted.
  std::int64_t size() const { return static_cast<std::int64_t>(draws_.size()); }
  std::int64_t distinct_size() const { return static_cast<std::int64_t>(pairs_.size()); }

  const std::vector<IndexPair>& draws() const { return draws_; }
  const std::vector<IndexPair>& pairs() const { return pairs_; }
  const std::vector<int>& counts() const { return counts_; }

  /// Position of a in pairs(), or -1 if absent.
  std::int64_t find(IndexPair a) const;
  bool has_repeats() const { return size() != distinct_size(); }

 private:
  int n_ = 0;
  std::vector<IndexPair> draws_;
  std::vector<IndexPair> pairs_;
  std::vector<int> counts_;
};

/// Every pair of {0..n-1} exactly once.
SampleSet full_sample_set(int n);

Matrix w_basis(IndexPair a, int n);
Matrix v_basis(IndexPair a, int n);

/// <w_a, w_b>: 4, 1 or 0.
double h_entry(IndexPair a, IndexPair b);
/// Closed-form entry of the inverse correlation matrix: 1/n^2 for disjoint
/// pairs, -1/(2n) + 1/n^2 for pairs sharing one index, and
/// (1 - 2/n + 2/n^2)/2 on the diagonal.
double h_inverse_entry(IndexPair a, IndexPair b, int n);

/// <Y, w_a> = Y_ii + Y_jj - Y_ij - Y_ji.
double inner_w(const Matrix& y, IndexPair a);
/// <Y, v_a> for symmetric Y, given row sums r = Y 1 and total s = 1^T Y 1.
double inner_v(const Matrix& y, const Vector& row_sums, double total, IndexPair a);

/// R_Omega(X) by masking D onto the samples (with multiplicity) and
/// conjugating by J. O(m + n^2).
Matrix r_omega(const Matrix& x, const SampleSet& omega);
/// R_Omega from already measured squared distances, one value per distinct
/// pair of omega (aligned with omega.pairs()).
Matrix r_omega_from_values(const SampleSet& omega, const std::vector<double>& values);
Matrix r_omega_star(const Matrix& y, const SampleSet& omega);
Matrix f_omega(const Matrix& y, const SampleSet& omega);

/// ((n^2 - 2n + 2) / (4n)) J.
Matrix sum_v_squared(int n);

// Block kernels used by the factored solvers. coef is aligned with
// omega.pairs() and already includes multiplicities.

/// S M with S = sum_a coef_a (e_i e_j^T + e_j e_i^T).
Matrix pair_sym_product(const SampleSet& omega, const std::vector<double>& coef, const Matrix& m);
/// (sum_a coef_a w_a) M.
Matrix w_sum_product(const SampleSet& omega, const std::vector<double>& coef, const Matrix& m);
/// (sum_a coef_a v_a) M = -1/2 J S J M.
Matrix v_sum_product(const SampleSet& omega, const std::vector<double>& coef, const Matrix& m);
/// Dense sum_a coef_a v_a.
Matrix v_sum_dense(const SampleSet& omega, const std::vector<double>& coef);

}  // namespace edg
