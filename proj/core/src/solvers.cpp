#include "edg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edg/dual_basis.hpp"

namespace edg {

std::string to_string(Variant v) {
  return v == Variant::FrameDescent ? "frame" : "pseudo";
}

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::MaxIters: return "max_iters";
    case SolverStatus::StepClampedToZero: return "step_clamped";
    case SolverStatus::RankDeficient: return "rank_deficient";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (rank < 1) throw std::invalid_argument("solver rank must be at least 1");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
}

std::vector<double> residual_values(const Observations& obs, const LowRankFactor& f) {
  const Matrix& u = f.basis;
  const Matrix b = u * f.spectrum.asDiagonal();
  const auto& pairs = obs.omega.pairs();
  std::vector<double> out(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const IndexPair a = pairs[k];
    const auto diff_b = b.row(a.i) - b.row(a.j);
    const auto diff_u = u.row(a.i) - u.row(a.j);
    out[k] = obs.values[k] - diff_b.dot(diff_u);
  }
  return out;
}

void tangent_pair_inner(const LowRankFactor& f, const TangentVector& t, const SampleSet& omega,
                        std::vector<double>* w_out, std::vector<double>* v_out) {
  const Matrix& u = f.basis;
  const Matrix& w = t.wing;
  // T_ij = A_i . U_j + U_i . W_j with A = U C + W.
  const Matrix a = u * t.core + w;
  auto entry = [&](int i, int j) { return a.row(i).dot(u.row(j)) + u.row(i).dot(w.row(j)); };
  const auto& pairs = omega.pairs();
  const double n = static_cast<double>(u.rows());
  Vector rho;
  double total = 0.0;
  if (v_out) {
    rho = a * u.colwise().sum().transpose() + u * w.colwise().sum().transpose();
    total = rho.sum();
    v_out->resize(pairs.size());
  }
  if (w_out) w_out->resize(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const IndexPair p = pairs[k];
    const double tij = entry(p.i, p.j);
    if (w_out) (*w_out)[k] = entry(p.i, p.i) + entry(p.j, p.j) - 2.0 * tij;
    if (v_out) (*v_out)[k] = -(tij - rho(p.i) / n - rho(p.j) / n + total / (n * n));
  }
}

namespace {

double truth_error(const LowRankFactor& f, const Matrix& truth, double truth_norm) {
  const Matrix b = f.basis * f.spectrum.asDiagonal();
  Matrix diff = truth;
  diff.noalias() -= b * f.basis.transpose();
  return diff.norm() / truth_norm;
}

SolverResult iterate(const Observations& obs, const SolverConfig& cfg, const LowRankFactor& x0) {
  cfg.validate();
  if (x0.size() != obs.omega.n()) throw std::invalid_argument("initial factor has the wrong size");
  const SampleSet& omega = obs.omega;
  const auto& counts = omega.counts();
  const bool frame = cfg.variant == Variant::FrameDescent;

  SolverResult out;
  out.factor = x0;
  SolverReport& rep = out.report;

  double truth_norm = 0.0;
  if (cfg.track_truth) {
    truth_norm = cfg.track_truth->entries.norm();
    if (truth_norm == 0.0) throw std::domain_error("tracked truth is zero");
    rep.truth_error_trace.emplace();
  }

  double data_norm = 0.0;
  for (double v : obs.values) data_norm += v * v;
  data_norm = std::sqrt(data_norm);

  LowRankFactor current = x0;
  if (current.rank() != cfg.rank) {
    // Pad or truncate so the iterate carries the requested manifold rank.
    if (current.rank() > cfg.rank) {
      current.basis = current.basis.leftCols(cfg.rank).eval();
      current.spectrum = current.spectrum.head(cfg.rank).eval();
    } else {
      throw std::invalid_argument("initial factor rank is below the solver rank");
    }
  }

  rep.status = SolverStatus::MaxIters;
  std::vector<double> coef(counts.size());
  std::vector<double> tw, tv;
  for (int it = 0; it < cfg.max_iters; ++it) {
    const std::vector<double> resid = residual_values(obs, current);
    double resid_norm = 0.0;
    for (std::size_t k = 0; k < resid.size(); ++k) {
      coef[k] = counts[k] * resid[k];
      resid_norm += resid[k] * resid[k];
    }
    if (std::sqrt(resid_norm) <= 1e-14 * std::max(data_norm, 1e-300)) {
      rep.status = SolverStatus::Converged;
      break;
    }

    const Matrix gu = frame ? w_sum_product(omega, coef, current.basis)
                            : v_sum_product(omega, coef, current.basis);
    const TangentVector t = project_tangent_from_product(current, gu);
    const double num = t.squared_norm();
    double den = 0.0;
    if (frame) {
      tangent_pair_inner(current, t, omega, &tw, nullptr);
      for (std::size_t k = 0; k < tw.size(); ++k) den += counts[k] * tw[k] * tw[k];
    } else {
      tangent_pair_inner(current, t, omega, &tw, &tv);
      for (std::size_t k = 0; k < tw.size(); ++k) den += counts[k] * tw[k] * tv[k];
    }
    const double step = (den > 0.0 && num > 0.0) ? num / den : 0.0;
    if (step <= 0.0 || !std::isfinite(step)) {
      rep.status = SolverStatus::StepClampedToZero;
      break;
    }

    LowRankFactor next = retract_structured(current, step, t, cfg.rank);
    const double change = factored_distance(next, current) / std::max(current.frobenius_norm(), 1e-30);
    current = std::move(next);
    ++rep.iterations;
    rep.step_trace.push_back(step);
    rep.rel_change_trace.push_back(change);
    if (cfg.track_truth) {
      rep.truth_error_trace->push_back(truth_error(current, cfg.track_truth->entries, truth_norm));
    }
    if (current.rank_deficient) {
      rep.status = SolverStatus::RankDeficient;
      break;
    }
    if (change <= cfg.rel_tol) {
      rep.status = SolverStatus::Converged;
      break;
    }
  }
  out.factor = std::move(current);
  return out;
}

}  // namespace

SolverResult frame_descent(const Observations& obs, const SolverConfig& cfg, const LowRankFactor& x0) {
  SolverConfig c = cfg;
  c.variant = Variant::FrameDescent;
  return iterate(obs, c, x0);
}

SolverResult pseudo_gradient(const Observations& obs, const SolverConfig& cfg, const LowRankFactor& x0) {
  SolverConfig c = cfg;
  c.variant = Variant::PseudoGradient;
  return iterate(obs, c, x0);
}

SolverResult solve(const Observations& obs, const SolverConfig& cfg, const LowRankFactor& x0) {
  return iterate(obs, cfg, x0);
}

PointsResult run_to_points(const LowRankFactor& result, int r) {
  if (r < 1) throw std::invalid_argument("run_to_points: r must be positive");
  const Eigen::Index n = result.size();
  Matrix coords = Matrix::Zero(r, n);
  PointsResult out;
  const Eigen::Index keep = std::min<Eigen::Index>(r, result.rank());
  for (Eigen::Index k = 0; k < keep; ++k) {
    double d = result.spectrum(k);
    if (d < 0.0) {
      out.negative = true;
      d = 0.0;
    }
    coords.row(k) = std::sqrt(d) * result.basis.col(k).transpose();
  }
  out.points = PointConfig(std::move(coords)).centered();
  return out;
}

}  // namespace edg
