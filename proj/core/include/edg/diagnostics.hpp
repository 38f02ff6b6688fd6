#pragma once

#include <cstdint>
#include <string>

#include "edg/manifold.hpp"
#include "edg/sampling.hpp"

namespace edg {

struct DiagnosticsReport {
  double nu_hat = 1.0;
  double mu1_hat = 0.0;
  double kappa = 0.0;
  double rip_deviation = 0.0;  ///< power-iteration estimate, a lower bound
  std::int64_t rip_samples = 0;
  int power_iters = 0;
};

/// Smallest nu >= 1 for which all six incoherence inequalities hold for the
/// column space of f.basis. O(n^2 r).
double coherence_nu(const LowRankFactor& f);

/// |X|_inf n / (sqrt(r) |X|). Throws std::domain_error if |X| = 0.
double mu1(const GramMatrix& x, const LowRankFactor& f);

struct RipEstimate {
  double deviation = 0.0;
  int iterations = 0;
};

/// Power iteration on A^* A for A = (L/m) P_T R_Omega P_T - P_T restricted to
/// the centered part of the tangent space. Stops after power_iters steps or
/// when the estimate changes by less than tol (relative).
RipEstimate rip_deviation(const LowRankFactor& f, const SampleSet& omega, int power_iters,
                          double tol = 1e-6, std::uint64_t seed = 1);

/// Truth factor for diagnostics: the r leading eigenpairs of x.
LowRankFactor truth_factor(const GramMatrix& x, int r);

DiagnosticsReport diagnose(const GramMatrix& x, int r, const SampleSet& omega, int power_iters = 200,
                           std::uint64_t seed = 1);

/// Flat "key=value" lines. Threshold comparisons are labeled as estimated,
/// since the deviation is a lower bound.
std::string format_report(const DiagnosticsReport& rep);

}  // namespace edg
