#include "edg/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace edg {

PointConfig::PointConfig(Matrix coords) : coords_(std::move(coords)) {
  if (coords_.rows() < 1 || coords_.cols() < 1) {
    throw std::invalid_argument("PointConfig needs at least one point and one dimension");
  }
}

bool PointConfig::is_centered(double rel_tol) const {
  const double scale = std::max(1.0, coords_.norm());
  return coords_.rowwise().sum().norm() <= rel_tol * scale;
}

PointConfig PointConfig::centered() const {
  const Vector mean = coords_.rowwise().mean();
  return PointConfig(coords_.colwise() - mean);
}

PointConfig PointConfig::padded_to(Eigen::Index dim) const {
  if (dim < coords_.rows()) {
    throw std::invalid_argument("padded_to cannot drop dimensions");
  }
  Matrix padded = Matrix::Zero(dim, coords_.cols());
  padded.topRows(coords_.rows()) = coords_;
  return PointConfig(std::move(padded));
}

GramMatrix gram_from_points(const PointConfig& p) {
  const Matrix& c = p.coords();
  if (p.is_centered()) return {c.transpose() * c};
  const Matrix centered = p.centered().coords();
  return {centered.transpose() * centered};
}

SqDistMatrix dist_from_gram(const GramMatrix& x) {
  const Vector diag = x.entries.diagonal();
  const Eigen::Index n = x.size();
  Matrix d(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      d(i, j) = diag(i) + diag(j) - 2.0 * x.entries(i, j);
    }
    d(j, j) = 0.0;
  }
  return {std::move(d)};
}

Matrix double_center(const Matrix& a) {
  const Vector row_mean = a.rowwise().mean();
  const Eigen::RowVectorXd col_mean = a.colwise().mean();
  const double grand = row_mean.mean();
  Matrix out = a;
  out.colwise() -= row_mean;
  out.rowwise() -= col_mean;
  out.array() += grand;
  return out;
}

GramMatrix gram_from_dist(const SqDistMatrix& d) {
  Matrix x = -0.5 * double_center(d.entries);
  // Symmetrize away rounding so downstream eigensolvers see an exact mirror.
  x = 0.5 * (x + x.transpose()).eval();
  return {std::move(x)};
}

MdsResult classical_mds(const SqDistMatrix& d, Eigen::Index r) {
  const Eigen::Index n = d.size();
  if (r < 1 || r > n) throw std::invalid_argument("classical_mds requires 1 <= r <= n");
  const GramMatrix x = gram_from_dist(d);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(x.entries);
  if (eig.info() != Eigen::Success) throw std::runtime_error("classical_mds: eigensolver failed");
  const Vector& values = eig.eigenvalues();  // ascending
  const double lmax = std::max(values(n - 1), 0.0);

  MdsResult result;
  result.non_euclidean = values(0) < -1e-8 * std::max(lmax, 1e-300);

  Matrix coords(r, n);
  for (Eigen::Index k = 0; k < r; ++k) {
    const Eigen::Index idx = n - 1 - k;
    double lambda = values(idx);
    if (lambda < 0.0) {
      if (lambda < -1e-8 * std::max(lmax, 1e-300)) result.clamped = true;
      lambda = 0.0;
    }
    coords.row(k) = std::sqrt(lambda) * eig.eigenvectors().col(idx).transpose();
  }
  result.points = PointConfig(std::move(coords));
  return result;
}

ProcrustesResult procrustes_align(const PointConfig& a, const PointConfig& b) {
  if (a.dim() != b.dim() || a.count() != b.count()) {
    throw std::invalid_argument("procrustes_align: shape mismatch");
  }
  const Matrix cross = b.coords() * a.coords().transpose();
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix q = svd.matrixU() * svd.matrixV().transpose();
  Matrix aligned = q * a.coords();
  const double sq = (aligned - b.coords()).squaredNorm();
  ProcrustesResult out;
  out.rmse = std::sqrt(sq / static_cast<double>(a.count()));
  out.aligned = PointConfig(std::move(aligned));
  out.rotation = std::move(q);
  return out;
}

double relative_gram_error(const GramMatrix& x_rev, const GramMatrix& x_true) {
  if (x_rev.size() != x_true.size()) throw std::invalid_argument("relative_gram_error: size mismatch");
  const double denom = x_true.entries.norm();
  if (denom == 0.0) throw std::domain_error("relative_gram_error: reference Gram matrix is zero");
  return (x_rev.entries - x_true.entries).norm() / denom;
}

}  // namespace edg
