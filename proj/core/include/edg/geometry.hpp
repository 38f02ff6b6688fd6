#pragma once

#include <Eigen/Dense>
#include <utility>

namespace edg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// n points in dimension r, stored column-wise (r x n).
class PointConfig {
 public:
  PointConfig() = default;
  /// Throws std::invalid_argument if coords has no rows or columns.
  explicit PointConfig(Matrix coords);

  const Matrix& coords() const { return coords_; }
  Eigen::Index dim() const { return coords_.rows(); }
  Eigen::Index count() const { return coords_.cols(); }

  bool is_centered(double rel_tol = 1e-10) const;
  /// Subtracts the column mean from every point.
  PointConfig centered() const;
  /// Appends zero coordinates so the configuration lives in `dim` dimensions.
  PointConfig padded_to(Eigen::Index dim) const;

 private:
  Matrix coords_;
};

/// Centered Gram matrix X = P^T P (symmetric, zero row sums, PSD).
struct GramMatrix {
  Matrix entries;
  Eigen::Index size() const { return entries.rows(); }
};

/// Squared distance matrix, D_ij = |p_i - p_j|^2 (symmetric, hollow).
struct SqDistMatrix {
  Matrix entries;
  Eigen::Index size() const { return entries.rows(); }
};

/// Centers p if needed, then forms P^T P.
GramMatrix gram_from_points(const PointConfig& p);

/// D = diag(X) 1^T + 1 diag(X)^T - 2X. The diagonal is set to exactly zero.
SqDistMatrix dist_from_gram(const GramMatrix& x);

/// X = -1/2 J D J with J = I - 11^T/n. Non-Euclidean input gives an
/// indefinite result rather than an error.
GramMatrix gram_from_dist(const SqDistMatrix& d);

/// J A J computed by subtracting row, column, and grand means in O(n^2).
Matrix double_center(const Matrix& a);

struct MdsResult {
  PointConfig points;
  /// The Gram spectrum has an eigenvalue below -1e-8 * lambda_max.
  bool non_euclidean = false;
  /// At least one retained eigenvalue was negative and was clamped to zero.
  bool clamped = false;
};

/// Classical (Torgerson) scaling from the r largest eigenpairs of
/// gram_from_dist(d). Requires 1 <= r <= n.
MdsResult classical_mds(const SqDistMatrix& d, Eigen::Index r);

struct ProcrustesResult {
  PointConfig aligned;  ///< Q a for the optimal orthogonal Q
  Matrix rotation;      ///< Q, r x r; may be a reflection
  double rmse = 0.0;    ///< sqrt(|Q a - b|_F^2 / n)
};

/// Orthogonal Procrustes registration of a onto b. Both must share r and n and
/// are expected to be centered already.
ProcrustesResult procrustes_align(const PointConfig& a, const PointConfig& b);

/// |x_rev - x_true|_F / |x_true|_F. Throws std::domain_error if x_true is zero.
double relative_gram_error(const GramMatrix& x_rev, const GramMatrix& x_true);

}  // namespace edg
