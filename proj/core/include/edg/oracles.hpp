#pragma once

#include "edg/dual_basis.hpp"
#include "edg/manifold.hpp"

namespace edg::oracle {

// Slow reference implementations. Dense L x L or n^2 x n^2 assemblies; keep n small.

/// Gram matrix of {w_a} over all pairs, in pair_index order.
Matrix dense_h(int n);
/// Closed-form inverse entries assembled into an L x L matrix.
Matrix dense_h_inverse(int n);

/// sum_a <X, w_a> v_a over the multiset, one term per draw.
Matrix r_omega_explicit(const Matrix& x, const SampleSet& omega);
Matrix r_omega_star_explicit(const Matrix& y, const SampleSet& omega);

/// sum over all pairs of v_a^2.
Matrix sum_v_squared_bruteforce(int n);

/// P_U Y + Y P_U - P_U Y P_U.
Matrix project_tangent_dense(const Matrix& u, const Matrix& y);

/// Operator norm of (L/m) P_T R_Omega P_T - P_T on the zero-row-sum symmetric
/// matrices, from the largest singular value of its n^2 x n^2 matrix.
double rip_deviation_dense(const LowRankFactor& f, const SampleSet& omega);

/// Random symmetric matrix with zero row sums.
Matrix random_centered_symmetric(int n, std::uint64_t seed);
/// Random centered Gram matrix of rank r (points i.i.d. normal).
Matrix random_gram(int n, int r, std::uint64_t seed);

}  // namespace edg::oracle
