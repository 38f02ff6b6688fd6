#include "edg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "edg/rng.hpp"

namespace edg {

namespace {

IndexPair pair_from_index_fast(std::int64_t k, int n) {
  // Row i starts at offset i n - i (i + 1) / 2; invert the quadratic and then
  // correct for rounding.
  const double nn = static_cast<double>(n);
  const double disc = (2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(k);
  auto i = static_cast<std::int64_t>(std::floor(((2.0 * nn - 1.0) - std::sqrt(std::max(disc, 0.0))) / 2.0));
  auto start = [n](std::int64_t row) { return row * n - row * (row + 1) / 2; };
  i = std::clamp<std::int64_t>(i, 0, n - 2);
  while (i > 0 && start(i) > k) --i;
  while (i < n - 2 && start(i + 1) <= k) ++i;
  return {static_cast<int>(i), static_cast<int>(i + 1 + (k - start(i)))};
}

}  // namespace

std::int64_t samples_for_rate(int n, double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("sampling rate must lie in (0, 1]");
  const auto m = static_cast<std::int64_t>(std::llround(rate * static_cast<double>(pair_count(n))));
  return std::max<std::int64_t>(m, 1);
}

SampleSet sample_uniform_replacement(int n, std::int64_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample_uniform_replacement: m must be at least 1");
  if (n < 2) throw std::invalid_argument("sample_uniform_replacement: n must be at least 2");
  CounterRng rng(seed, Stream::Sampling);
  const auto total = static_cast<std::uint64_t>(pair_count(n));
  std::vector<IndexPair> draws;
  draws.reserve(static_cast<std::size_t>(m));
  for (std::int64_t t = 0; t < m; ++t) {
    draws.push_back(pair_from_index_fast(static_cast<std::int64_t>(rng.below(total)), n));
  }
  return SampleSet(n, std::move(draws));
}

SampleSet sample_bernoulli(int n, double rate, std::uint64_t seed) {
  CounterRng rng(seed, Stream::Sampling);
  std::vector<IndexPair> draws;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform01() < rate) draws.push_back({i, j});
  if (draws.empty()) throw std::runtime_error("sample_bernoulli: no pair selected");
  return SampleSet(n, std::move(draws));
}

StructuredLayout structured_layout(int n, const StructuredSpec& spec) {
  if (spec.anchors < 1 || spec.anchors + 1 > n) {
    throw std::invalid_argument("structured sampling needs 1 <= anchors <= n - 1");
  }
  if (spec.k < 1 || spec.k > spec.anchors) {
    throw std::invalid_argument("structured sampling needs 1 <= k <= anchors");
  }
  if (!(spec.e_rate >= 0.0 && spec.e_rate <= 1.0)) {
    throw std::invalid_argument("structured sampling rate must lie in [0, 1]");
  }
  StructuredLayout layout;
  if (spec.anchors == 1) {
    layout.anchors.push_back(0);
  } else {
    for (int t = 0; t < spec.anchors; ++t) {
      const double pos = 1.0 + t * (n - 1.0) / (spec.anchors - 1.0);
      layout.anchors.push_back(static_cast<int>(std::llround(pos)) - 1);
    }
    layout.anchors.erase(std::unique(layout.anchors.begin(), layout.anchors.end()),
                         layout.anchors.end());
  }
  std::vector<char> is_anchor(static_cast<std::size_t>(n), 0);
  for (int a : layout.anchors) is_anchor[static_cast<std::size_t>(a)] = 1;

  if (spec.central >= 0) {
    if (spec.central >= n || is_anchor[static_cast<std::size_t>(spec.central)]) {
      throw std::invalid_argument("central node must be a valid non-anchor index");
    }
    layout.central = spec.central;
  } else {
    std::vector<int> free;
    for (int i = 0; i < n; ++i)
      if (!is_anchor[static_cast<std::size_t>(i)]) free.push_back(i);
    layout.central = free[(free.size() - 1) / 2];
  }
  for (int i = 0; i < n; ++i) {
    if (!is_anchor[static_cast<std::size_t>(i)] && i != layout.central) layout.mobiles.push_back(i);
  }
  if (spec.k > static_cast<int>(layout.anchors.size())) {
    throw std::invalid_argument("k exceeds the number of distinct pseudoanchors");
  }
  return layout;
}

SampleSet sample_structured(int n, const StructuredSpec& spec, std::uint64_t seed) {
  const StructuredLayout layout = structured_layout(n, spec);
  CounterRng rng(seed, Stream::Sampling);
  std::vector<IndexPair> draws;
  auto add = [&](int a, int b) { draws.push_back({std::min(a, b), std::max(a, b)}); };

  for (int j = 0; j < n; ++j)
    if (j != layout.central) add(layout.central, j);

  const auto& anchors = layout.anchors;
  for (std::size_t a = 0; a < anchors.size(); ++a)
    for (std::size_t b = a + 1; b < anchors.size(); ++b)
      if (rng.uniform01() < spec.e_rate) add(anchors[a], anchors[b]);

  // Partial Fisher-Yates: k distinct anchors per mobile node.
  std::vector<int> pool(anchors.begin(), anchors.end());
  for (int node : layout.mobiles) {
    std::copy(anchors.begin(), anchors.end(), pool.begin());
    for (int t = 0; t < spec.k; ++t) {
      const auto pick = t + static_cast<std::size_t>(rng.below(pool.size() - t));
      std::swap(pool[static_cast<std::size_t>(t)], pool[pick]);
      add(node, pool[static_cast<std::size_t>(t)]);
    }
  }
  return SampleSet(n, std::move(draws));
}

Observations measure(const GramMatrix& x, const SampleSet& omega) {
  Observations obs{omega, {}};
  obs.values.reserve(omega.pairs().size());
  for (const auto& a : omega.pairs()) obs.values.push_back(inner_w(x.entries, a));
  return obs;
}

Observations measure(const SqDistMatrix& d, const SampleSet& omega) {
  Observations obs{omega, {}};
  obs.values.reserve(omega.pairs().size());
  for (const auto& a : omega.pairs()) obs.values.push_back(d.entries(a.i, a.j));
  return obs;
}

Observations measure(const PointConfig& p, const SampleSet& omega) {
  Observations obs{omega, {}};
  obs.values.reserve(omega.pairs().size());
  const Matrix& c = p.coords();
  for (const auto& a : omega.pairs()) obs.values.push_back((c.col(a.i) - c.col(a.j)).squaredNorm());
  return obs;
}

}  // namespace edg
