#pragma once

#include <cstdint>
#include <functional>

#include "edg/geometry.hpp"

namespace edg {

/// X = U diag(d) U^T with orthonormal U (n x r) and |d| non-increasing.
struct LowRankFactor {
  Matrix basis;
  Vector spectrum;
  /// Set when |d_r| <= 1e-12 |d_1| (or the whole spectrum vanishes).
  bool rank_deficient = false;

  Eigen::Index rank() const { return spectrum.size(); }
  Eigen::Index size() const { return basis.rows(); }
  Matrix densify() const;
  /// |X|_F, computed from the spectrum.
  double frobenius_norm() const { return spectrum.norm(); }
};

/// P_T(Y) = U core U^T + wing U^T + U wing^T, with U^T wing = 0.
struct TangentVector {
  Matrix core;
  Matrix wing;

  /// |P_T Y|_F^2 = |core|_F^2 + 2 |wing|_F^2.
  double squared_norm() const { return core.squaredNorm() + 2.0 * wing.squaredNorm(); }
};

double tangent_inner(const TangentVector& a, const TangentVector& b);

TangentVector project_tangent(const LowRankFactor& f, const Matrix& y);
/// Projection when only the product G U is available (G symmetric).
TangentVector project_tangent_from_product(const LowRankFactor& f, const Matrix& gu);
Matrix densify(const LowRankFactor& f, const TangentVector& t);

/// Orders eigenpairs by |lambda| descending (stable), keeps the first r, fixes
/// eigenvector signs and sets the rank-deficiency flag.
LowRankFactor select_top_abs(const Vector& values, const Matrix& vectors, Eigen::Index r);

/// Best rank-r approximation by a full symmetric eigendecomposition.
LowRankFactor hard_threshold(const Matrix& y, Eigen::Index r);

struct SubspaceOptions {
  /// Extra block columns beyond r; 0 picks max(r, 10).
  Eigen::Index oversample = 0;
  int max_iters = 500;
  double tol = 1e-11;
  std::uint64_t seed = 0x5eed;
};

/// Symmetric operator given as a block product M -> Y M.
using SymOperator = std::function<Matrix(const Matrix&)>;

/// Top-r eigenpairs by |lambda| of an implicitly given symmetric n x n
/// operator, by block subspace iteration with Rayleigh-Ritz extraction.
LowRankFactor hard_threshold(const SymOperator& apply, Eigen::Index n, Eigen::Index r,
                             const SubspaceOptions& opts = {});

/// H_r(X + step P_T G) without forming any n x n matrix.
LowRankFactor retract_structured(const LowRankFactor& f, double step, const TangentVector& g,
                                 Eigen::Index r);

/// Refactors A diag(d) A^T for a non-orthonormal A (thin QR plus a small
/// eigendecomposition), keeping the top r eigenpairs.
LowRankFactor refactor(const Matrix& a, const Vector& d, Eigen::Index r);

/// |d_1| / |d_r|. Throws std::domain_error on a rank-deficient factor.
double condition_number(const LowRankFactor& f);

/// |X_a - X_b|_F in factored form, O(n r^2).
double factored_distance(const LowRankFactor& a, const LowRankFactor& b);

}  // namespace edg
