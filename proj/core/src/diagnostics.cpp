#include "edg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "edg/dual_basis.hpp"
#include "edg/rng.hpp"
#include "edg/solvers.hpp"

namespace edg {

double coherence_nu(const LowRankFactor& f) {
  const Matrix& u = f.basis;
  const Eigen::Index n = u.rows();
  const double nn = static_cast<double>(n);
  const double r = static_cast<double>(u.cols());

  const Vector row_sq = u.rowwise().squaredNorm();
  const double max_row = row_sq.maxCoeff();
  // e_ij terms: |P_U e_ij|^2 = |U_i|^2, and the tangent version is largest
  // when both indices hit the largest row.
  double nu = 128.0 * nn / r * max_row;
  nu = std::max(nu, 128.0 * nn / r * (1.0 - (1.0 - max_row) * (1.0 - max_row)));

  // Centered rows give U^T a for a = e_i - 1/n.
  const Eigen::RowVectorXd mean = u.colwise().mean();
  const Matrix uc = u.rowwise() - mean;
  const Vector uc_sq = uc.rowwise().squaredNorm();
  const double a_sq = (nn - 1.0) / nn;
  const double ab = -1.0 / nn;
  const double v_sq = 0.5 * (a_sq * a_sq + 1.0 / (nn * nn));

  double w_u = 0.0, w_t = 0.0, v_u = 0.0, v_t = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double diff_sq = (u.row(i) - u.row(j)).squaredNorm();
      w_u = std::max(w_u, 2.0 * diff_sq);
      const double c = 2.0 - diff_sq;
      w_t = std::max(w_t, 4.0 - c * c);

      const double uab = uc.row(i).dot(uc.row(j));
      const double pu_v = 0.25 * (uc_sq(i) * a_sq + uc_sq(j) * a_sq + 2.0 * uab * ab);
      v_u = std::max(v_u, pu_v);
      const double ap = a_sq - uc_sq(i);
      const double bp = a_sq - uc_sq(j);
      const double apbp = ab - uab;
      v_t = std::max(v_t, v_sq - 0.5 * (ap * bp + apbp * apbp));
    }
  }
  nu = std::max(nu, 8.0 * nn / r * std::max(w_u, w_t));
  nu = std::max(nu, 2.0 * nn / r * std::max(v_u, v_t));
  return std::max(nu, 1.0);
}

double mu1(const GramMatrix& x, const LowRankFactor& f) {
  const double spectral = f.rank() > 0 ? std::abs(f.spectrum(0)) : 0.0;
  if (spectral == 0.0) throw std::domain_error("mu1: zero matrix");
  const double sup = x.entries.cwiseAbs().maxCoeff();
  return sup * static_cast<double>(x.size()) / (std::sqrt(static_cast<double>(f.rank())) * spectral);
}

namespace {

// Keeps a tangent vector inside the centered tangent space: wing orthogonal
// to both U and the all-ones vector.
void clean(const LowRankFactor& f, TangentVector& t) {
  t.core = (0.5 * (t.core + t.core.transpose())).eval();
  t.wing -= f.basis * (f.basis.transpose() * t.wing);
  t.wing.rowwise() -= t.wing.colwise().mean();
}

TangentVector scaled(const TangentVector& t, double s) { return {s * t.core, s * t.wing}; }

}  // namespace

RipEstimate rip_deviation(const LowRankFactor& f, const SampleSet& omega, int power_iters, double tol,
                          std::uint64_t seed) {
  const int n = omega.n();
  const Eigen::Index r = f.rank();
  const double scale = static_cast<double>(pair_count(n)) / static_cast<double>(omega.size());
  const auto& counts = omega.counts();

  std::vector<double> tw, tv, coef(counts.size());
  auto apply = [&](const TangentVector& t, bool adjoint) {
    tangent_pair_inner(f, t, omega, &tw, &tv);
    const std::vector<double>& src = adjoint ? tv : tw;
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = counts[k] * src[k];
    const Matrix gu = adjoint ? w_sum_product(omega, coef, f.basis) : v_sum_product(omega, coef, f.basis);
    TangentVector out = project_tangent_from_product(f, gu);
    out.core = scale * out.core - t.core;
    out.wing = scale * out.wing - t.wing;
    clean(f, out);
    return out;
  };

  CounterRng rng(seed, Stream::PowerIteration);
  TangentVector x{Matrix(r, r), Matrix(n, r)};
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) x.core(i, j) = rng.normal();
    for (Eigen::Index i = 0; i < n; ++i) x.wing(i, j) = rng.normal();
  }
  clean(f, x);
  x = scaled(x, 1.0 / std::sqrt(x.squared_norm()));

  RipEstimate est;
  double prev = -1.0;
  for (int it = 0; it < std::max(1, power_iters); ++it) {
    const TangentVector y = apply(x, false);
    const double value = std::sqrt(y.squared_norm());
    est.deviation = value;
    est.iterations = it + 1;
    if (value == 0.0) break;
    if (prev >= 0.0 && std::abs(value - prev) <= tol * value) break;
    prev = value;
    TangentVector z = apply(y, true);
    const double zn = std::sqrt(z.squared_norm());
    if (zn == 0.0) break;
    x = scaled(z, 1.0 / zn);
  }
  return est;
}

LowRankFactor truth_factor(const GramMatrix& x, int r) {
  if (x.size() <= 400) return hard_threshold(x.entries, r);
  auto apply = [&](const Matrix& m) -> Matrix { return x.entries * m; };
  return hard_threshold(apply, x.size(), r);
}

DiagnosticsReport diagnose(const GramMatrix& x, int r, const SampleSet& omega, int power_iters,
                           std::uint64_t seed) {
  const LowRankFactor f = truth_factor(x, r);
  DiagnosticsReport rep;
  rep.nu_hat = coherence_nu(f);
  rep.mu1_hat = mu1(x, f);
  rep.kappa = f.rank_deficient ? INFINITY : condition_number(f);
  const RipEstimate rip = rip_deviation(f, omega, power_iters, 1e-6, seed);
  rep.rip_deviation = rip.deviation;
  rep.rip_samples = omega.size();
  rep.power_iters = rip.iterations;
  return rep;
}

std::string format_report(const DiagnosticsReport& rep) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "nu_hat=%.6g\nmu1_hat=%.6g\nkappa=%.6g\nrip_deviation=%.6g\nrip_samples=%lld\n"
                "power_iters=%d\nrip_below_quarter_estimated=%s\n",
                rep.nu_hat, rep.mu1_hat, rep.kappa, rep.rip_deviation,
                static_cast<long long>(rep.rip_samples), rep.power_iters,
                rep.rip_deviation < 0.25 ? "true" : "false");
  return buf;
}

}  // namespace edg
