#include "edg/init.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

#include "edg/dual_basis.hpp"
#include "edg/solvers.hpp"

namespace edg {

namespace {

constexpr int kDenseLimit = 400;

std::vector<double> weighted_values(const Observations& obs) {
  std::vector<double> coef(obs.values.size());
  for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = obs.omega.counts()[k] * obs.values[k];
  return coef;
}

}  // namespace

LowRankFactor init_one_step(const Observations& obs, int n, int r) {
  if (obs.omega.n() != n) throw std::invalid_argument("init_one_step: size mismatch");
  const double scale = static_cast<double>(pair_count(n)) / static_cast<double>(obs.omega.size());
  const std::vector<double> coef = weighted_values(obs);
  if (n <= kDenseLimit) {
    return hard_threshold(scale * v_sum_dense(obs.omega, coef), r);
  }
  auto apply = [&](const Matrix& m) -> Matrix { return scale * v_sum_product(obs.omega, coef, m); };
  return hard_threshold(apply, n, r);
}

LowRankFactor init_shortest_path(const Observations& obs, int n, int r) {
  if (obs.omega.n() != n) throw std::invalid_argument("init_shortest_path: size mismatch");
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < obs.values.size(); ++k) {
    const IndexPair a = obs.omega.pairs()[k];
    const double len = std::sqrt(std::max(obs.values[k], 0.0));
    adj[a.i].push_back({a.j, len});
    adj[a.j].push_back({a.i, len});
  }
  const double inf = std::numeric_limits<double>::infinity();
  Matrix sq(n, n);
  using Entry = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    std::vector<double> dist(static_cast<std::size_t>(n), inf);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, len] : adj[u]) {
        if (d + len < dist[v]) {
          dist[v] = d + len;
          heap.push({dist[v], v});
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      if (dist[j] == inf) throw std::domain_error("observation graph is disconnected");
      sq(s, j) = dist[j] * dist[j];
    }
  }
  const Matrix g = gram_from_dist(SqDistMatrix{sq}).entries;
  if (n <= kDenseLimit) return hard_threshold(g, r);
  auto apply = [&](const Matrix& m) -> Matrix { return g * m; };
  return hard_threshold(apply, n, r);
}

Matrix trim_rows(const Matrix& u, double nu, int r) {
  const double cap = std::sqrt(nu * r / static_cast<double>(u.rows()));
  Matrix a = u;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double norm = a.row(i).norm();
    if (norm > cap) a.row(i) *= cap / norm;
  }
  return a;
}

LowRankFactor trim(const LowRankFactor& f, double nu, int r) {
  const Matrix a = trim_rows(f.basis, nu, r);
  if (a == f.basis) return f;
  return refactor(a, f.spectrum, r);
}

std::vector<Observations> partition_observations(const Observations& obs, int groups) {
  const auto& draws = obs.omega.draws();
  const auto m = static_cast<std::int64_t>(draws.size());
  if (groups < 1 || m < groups) {
    throw std::invalid_argument("cannot split the samples into the requested number of groups");
  }
  const std::int64_t base = m / groups;
  const std::int64_t extra = m % groups;
  std::vector<Observations> out;
  std::int64_t pos = 0;
  for (int g = 0; g < groups; ++g) {
    const std::int64_t len = base + (g < extra ? 1 : 0);
    std::vector<IndexPair> part(draws.begin() + pos, draws.begin() + pos + len);
    pos += len;
    SampleSet sub(obs.omega.n(), std::move(part));
    std::vector<double> values;
    values.reserve(sub.pairs().size());
    for (const auto& a : sub.pairs()) values.push_back(obs.values[static_cast<std::size_t>(obs.omega.find(a))]);
    out.push_back({std::move(sub), std::move(values)});
  }
  return out;
}

LowRankFactor init_resampled(const Observations& obs, int n, const ResampleConfig& cfg) {
  if (cfg.partitions < 0) throw std::invalid_argument("partitions must be non-negative");
  if (cfg.partitions == 0) return init_one_step(obs, n, cfg.rank);
  const std::vector<Observations> parts = partition_observations(obs, cfg.partitions + 1);
  const double total = static_cast<double>(pair_count(n));

  LowRankFactor z = init_one_step(parts[0], n, cfg.rank);
  for (int l = 0; l < cfg.partitions; ++l) {
    const Observations& part = parts[static_cast<std::size_t>(l + 1)];
    const LowRankFactor zhat = trim(z, cfg.nu, cfg.rank);
    const std::vector<double> resid = residual_values(part, zhat);
    std::vector<double> coef(resid.size());
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = part.omega.counts()[k] * resid[k];
    const TangentVector t =
        project_tangent_from_product(zhat, v_sum_product(part.omega, coef, zhat.basis));
    const double step = total / static_cast<double>(part.omega.size());
    z = retract_structured(zhat, step, t, cfg.rank);
  }
  return z;
}

}  // namespace edg
