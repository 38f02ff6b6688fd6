#include "edg/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "edg/rng.hpp"

namespace edg {

namespace {

void fix_signs(Matrix& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const double scale = vectors.col(k).cwiseAbs().maxCoeff();
    if (scale == 0.0) continue;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      if (std::abs(vectors(i, k)) > 1e-12 * scale) {
        if (vectors(i, k) < 0.0) vectors.col(k) = -vectors.col(k);
        break;
      }
    }
  }
}

Matrix thin_q(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
}

}  // namespace

Matrix LowRankFactor::densify() const {
  return basis * spectrum.asDiagonal() * basis.transpose();
}

double tangent_inner(const TangentVector& a, const TangentVector& b) {
  return (a.core.array() * b.core.array()).sum() + 2.0 * (a.wing.array() * b.wing.array()).sum();
}

TangentVector project_tangent_from_product(const LowRankFactor& f, const Matrix& gu) {
  TangentVector t;
  t.core = f.basis.transpose() * gu;
  t.core = (0.5 * (t.core + t.core.transpose())).eval();
  t.wing = gu - f.basis * t.core;
  return t;
}

TangentVector project_tangent(const LowRankFactor& f, const Matrix& y) {
  const Matrix sym = 0.5 * (y + y.transpose());
  return project_tangent_from_product(f, sym * f.basis);
}

Matrix densify(const LowRankFactor& f, const TangentVector& t) {
  const Matrix& u = f.basis;
  Matrix out = u * t.core * u.transpose();
  out.noalias() += t.wing * u.transpose();
  out.noalias() += u * t.wing.transpose();
  return out;
}

LowRankFactor select_top_abs(const Vector& values, const Matrix& vectors, Eigen::Index r) {
  const Eigen::Index total = values.size();
  if (r < 1 || r > total) throw std::invalid_argument("select_top_abs: rank out of range");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(values(a)) > std::abs(values(b));
  });
  LowRankFactor f;
  f.basis.resize(vectors.rows(), r);
  f.spectrum.resize(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    f.basis.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    f.spectrum(k) = values(order[static_cast<std::size_t>(k)]);
  }
  fix_signs(f.basis);
  const double top = std::abs(f.spectrum(0));
  f.rank_deficient = top == 0.0 || std::abs(f.spectrum(r - 1)) <= 1e-12 * top;
  return f;
}

LowRankFactor hard_threshold(const Matrix& y, Eigen::Index r) {
  if (y.rows() != y.cols()) throw std::invalid_argument("hard_threshold: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (y + y.transpose()));
  if (eig.info() != Eigen::Success) throw std::runtime_error("hard_threshold: eigensolver failed");
  return select_top_abs(eig.eigenvalues(), eig.eigenvectors(), r);
}

LowRankFactor hard_threshold(const SymOperator& apply, Eigen::Index n, Eigen::Index r,
                             const SubspaceOptions& opts) {
  if (r < 1 || r > n) throw std::invalid_argument("hard_threshold: rank out of range");
  const Eigen::Index extra = opts.oversample > 0 ? opts.oversample : std::max<Eigen::Index>(r, 10);
  const Eigen::Index b = std::min(n, r + extra);

  CounterRng rng(opts.seed, Stream::Eigensolver);
  Matrix q(n, b);
  for (Eigen::Index j = 0; j < b; ++j)
    for (Eigen::Index i = 0; i < n; ++i) q(i, j) = rng.normal();
  q = thin_q(q);

  Vector ritz_values;
  Matrix ritz_vectors;
  for (int it = 0; it < std::max(1, opts.max_iters); ++it) {
    const Matrix z = apply(q);
    Matrix small = q.transpose() * z;
    small = (0.5 * (small + small.transpose())).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(small);
    // Sort Ritz pairs by |lambda| so the wanted ones come first.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(b));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index c) {
      return std::abs(eig.eigenvalues()(a)) > std::abs(eig.eigenvalues()(c));
    });
    Matrix s(b, b);
    ritz_values.resize(b);
    for (Eigen::Index k = 0; k < b; ++k) {
      s.col(k) = eig.eigenvectors().col(order[static_cast<std::size_t>(k)]);
      ritz_values(k) = eig.eigenvalues()(order[static_cast<std::size_t>(k)]);
    }
    ritz_vectors = q * s;
    const Matrix zs = z * s;
    const double top = std::abs(ritz_values(0));
    double worst = 0.0;
    for (Eigen::Index k = 0; k < r; ++k) {
      worst = std::max(worst, (zs.col(k) - ritz_values(k) * ritz_vectors.col(k)).norm());
    }
    if (top == 0.0 || worst <= opts.tol * top) break;
    q = thin_q(zs);
  }
  return select_top_abs(ritz_values.head(r), ritz_vectors.leftCols(r), r);
}

LowRankFactor retract_structured(const LowRankFactor& f, double step, const TangentVector& g,
                                 Eigen::Index r) {
  const Eigen::Index n = f.size();
  const Eigen::Index k = f.rank();
  if (r > 2 * k) {
    throw std::invalid_argument("retract_structured: rank exceeds twice the factor rank");
  }
  Eigen::HouseholderQR<Matrix> qr(g.wing);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  const Matrix rmat = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

  Matrix big = Matrix::Zero(2 * k, 2 * k);
  big.topLeftCorner(k, k) = step * g.core;
  big.topLeftCorner(k, k).diagonal() += f.spectrum;
  big.bottomLeftCorner(k, k) = step * rmat;
  big.topRightCorner(k, k) = step * rmat.transpose();
  big = (0.5 * (big + big.transpose())).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(big);
  LowRankFactor small = select_top_abs(eig.eigenvalues(), eig.eigenvectors(), std::min(r, 2 * k));
  Matrix stacked(n, 2 * k);
  stacked << f.basis, q;
  LowRankFactor out;
  out.basis = stacked * small.basis;
  out.spectrum = small.spectrum;
  // Re-fix signs on the lifted basis so the convention holds in R^n.
  return select_top_abs(out.spectrum, out.basis, out.rank());
}

LowRankFactor refactor(const Matrix& a, const Vector& d, Eigen::Index r) {
  Eigen::HouseholderQR<Matrix> qr(a);
  const Eigen::Index k = a.cols();
  const Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), k);
  const Matrix rmat = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Matrix small = rmat * d.asDiagonal() * rmat.transpose();
  small = (0.5 * (small + small.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(small);
  const LowRankFactor s = select_top_abs(eig.eigenvalues(), eig.eigenvectors(), r);
  return select_top_abs(s.spectrum, q * s.basis, r);
}

double condition_number(const LowRankFactor& f) {
  if (f.rank() == 0 || f.rank_deficient || f.spectrum(f.rank() - 1) == 0.0) {
    throw std::domain_error("condition_number: rank-deficient factor");
  }
  return std::abs(f.spectrum(0)) / std::abs(f.spectrum(f.rank() - 1));
}

double factored_distance(const LowRankFactor& a, const LowRankFactor& b) {
  // X_a - X_b = [U_a U_b] diag(d_a, -d_b) [U_a U_b]^T; reduce through a thin
  // QR so that nearby iterates do not lose digits to cancellation.
  const Eigen::Index ka = a.rank();
  const Eigen::Index kb = b.rank();
  Matrix stacked(a.size(), ka + kb);
  stacked << a.basis, b.basis;
  Eigen::HouseholderQR<Matrix> qr(stacked);
  const Eigen::Index k = std::min(stacked.rows(), ka + kb);
  const Matrix rmat = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Vector d(ka + kb);
  d << a.spectrum, -b.spectrum;
  return (rmat * d.asDiagonal() * rmat.transpose()).norm();
}

}  // namespace edg
