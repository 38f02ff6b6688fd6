#pragma once

#include <vector>

#include "edg/manifold.hpp"
#include "edg/sampling.hpp"

namespace edg {

/// H_r((L/m) R_Omega(X)) from observed distances. Uses a dense
/// eigendecomposition for small n and block subspace iteration otherwise.
LowRankFactor init_one_step(const Observations& obs, int n, int r);

/// Classical MDS on the shortest-path completion of the observed distances
/// (path lengths in unsquared distance). Throws std::domain_error if the
/// observation graph is disconnected.
LowRankFactor init_shortest_path(const Observations& obs, int n, int r);

/// Rows of U capped at sqrt(nu r / n); zero rows stay zero.
Matrix trim_rows(const Matrix& u, double nu, int r);
/// Trimmed factor A diag(d) A^T, refactored to an orthonormal basis.
LowRankFactor trim(const LowRankFactor& f, double nu, int r);

struct ResampleConfig {
  int partitions = 0;  ///< S
  double nu = 1.0;
  int rank = 3;
};

/// Splits the draws, in sampling order, into S+1 groups; the first
/// m mod (S+1) groups get one extra draw.
std::vector<Observations> partition_observations(const Observations& obs, int groups);

LowRankFactor init_resampled(const Observations& obs, int n, const ResampleConfig& cfg);

}  // namespace edg
