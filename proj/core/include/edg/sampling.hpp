#pragma once

#include <cstdint>
#include <vector>

#include "edg/dual_basis.hpp"

namespace edg {

/// m independent uniform draws from the upper triangle. Throws if m < 1.
SampleSet sample_uniform_replacement(int n, std::int64_t m, std::uint64_t seed);

/// Each pair kept independently with probability rate (duplicate-free).
/// Throws if no pair survives.
SampleSet sample_bernoulli(int n, double rate, std::uint64_t seed);

/// m = round(rate L), at least 1.
std::int64_t samples_for_rate(int n, double rate);

struct StructuredSpec {
  int anchors = 20;      ///< pseudoanchor count m_a
  int central = -1;      ///< 0-based fully known node; -1 picks the default
  double e_rate = 0.3;   ///< Bernoulli rate inside the pseudoanchor block
  int k = 6;             ///< pseudoanchor partners per mobile node
};

struct StructuredLayout {
  std::vector<int> anchors;  ///< 0-based, ascending
  int central = 0;
  std::vector<int> mobiles;  ///< ascending
};

/// Anchors at round(1 + t (n-1)/(m_a-1)) (1-based), deduplicated; the central
/// node is the median index that is not a pseudoanchor.
StructuredLayout structured_layout(int n, const StructuredSpec& spec);

SampleSet sample_structured(int n, const StructuredSpec& spec, std::uint64_t seed);

/// Observed squared distances, aligned with omega.pairs().
struct Observations {
  SampleSet omega;
  std::vector<double> values;
};

Observations measure(const GramMatrix& x, const SampleSet& omega);
Observations measure(const SqDistMatrix& d, const SampleSet& omega);
/// Distances straight from coordinates, O(m r).
Observations measure(const PointConfig& p, const SampleSet& omega);

}  // namespace edg
