#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edg/manifold.hpp"
#include "edg/sampling.hpp"

namespace edg {

enum class Variant { FrameDescent, PseudoGradient };
enum class SolverStatus { Converged, MaxIters, StepClampedToZero, RankDeficient };

std::string to_string(Variant v);
std::string to_string(SolverStatus s);

struct SolverConfig {
  int rank = 3;
  int max_iters = 1000;
  double rel_tol = 1e-5;
  Variant variant = Variant::FrameDescent;
  /// Only used to fill truth_error_trace.
  std::optional<GramMatrix> track_truth;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct SolverReport {
  int iterations = 0;
  SolverStatus status = SolverStatus::MaxIters;
  std::vector<double> rel_change_trace;
  std::optional<std::vector<double>> truth_error_trace;
  std::vector<double> step_trace;
};

struct SolverResult {
  LowRankFactor factor;
  SolverReport report;
};

/// Descent on 1/2 <Y - X, F_Omega(Y - X)> with the exact line-search step.
SolverResult frame_descent(const Observations& obs, const SolverConfig& cfg, const LowRankFactor& x0);
/// Pseudo-gradient R_Omega(X - X_l) with step clamped at zero.
SolverResult pseudo_gradient(const Observations& obs, const SolverConfig& cfg, const LowRankFactor& x0);
/// Dispatches on cfg.variant.
SolverResult solve(const Observations& obs, const SolverConfig& cfg, const LowRankFactor& x0);

/// Per-pair residual D_a - <X_l, w_a>, aligned with obs.omega.pairs().
std::vector<double> residual_values(const Observations& obs, const LowRankFactor& f);

/// <T, w_a> and <T, v_a> for every distinct pair, T given in factored form.
void tangent_pair_inner(const LowRankFactor& f, const TangentVector& t, const SampleSet& omega,
                        std::vector<double>* w_out, std::vector<double>* v_out);

struct PointsResult {
  PointConfig points;
  /// A retained eigenvalue was negative and was clamped to zero.
  bool negative = false;
};

PointsResult run_to_points(const LowRankFactor& result, int r);

}  // namespace edg
