#include "edg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "edg/diagnostics.hpp"
#include "edg/io.hpp"
#include "edg/rng.hpp"
#include "edg/sample_io.hpp"

namespace edg {

Dataset parse_dataset(const std::string& name) {
  if (name == "sphere") return Dataset::Sphere;
  if (name == "swissroll" || name == "swiss_roll") return Dataset::SwissRoll;
  if (name == "cow") return Dataset::Cow;
  if (name == "cities") return Dataset::Cities;
  if (name == "gaussian" || name == "random") return Dataset::RandomGaussian;
  if (name == "xyz") return Dataset::XyzFile;
  if (name == "pdb") return Dataset::PdbFile;
  throw std::invalid_argument("unknown dataset \"" + name + "\"");
}

std::string to_string(Dataset d) {
  switch (d) {
    case Dataset::Sphere: return "sphere";
    case Dataset::SwissRoll: return "swissroll";
    case Dataset::Cow: return "cow";
    case Dataset::Cities: return "cities";
    case Dataset::RandomGaussian: return "gaussian";
    case Dataset::XyzFile: return "xyz";
    case Dataset::PdbFile: return "pdb";
  }
  return "unknown";
}

namespace {

bool file_backed(Dataset d) {
  return d == Dataset::Cow || d == Dataset::Cities || d == Dataset::XyzFile || d == Dataset::PdbFile;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (sampling == SamplingMode::Uniform && !(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in (0, 1]");
  }
  if (file_backed(dataset) && path.empty()) {
    throw std::invalid_argument("dataset " + to_string(dataset) + " needs a file path");
  }
  if (!file_backed(dataset) && n < 2) throw std::invalid_argument("n must be at least 2");
  if (ambient_dim < 1) throw std::invalid_argument("ambient dimension must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  solver.validate();
}

PointConfig generate_dataset(const ExperimentSpec& spec) {
  if (file_backed(spec.dataset)) {
    if (spec.path.empty()) throw std::invalid_argument("dataset " + to_string(spec.dataset) + " needs a file path");
    return spec.dataset == Dataset::PdbFile ? ingest_pdb(spec.path) : ingest_xyz(spec.path);
  }
  const int n = spec.n;
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  CounterRng rng(spec.base_seed, Stream::Dataset);
  Matrix coords;
  switch (spec.dataset) {
    case Dataset::Sphere: {
      // Fibonacci lattice on the unit sphere.
      coords.resize(3, n);
      const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
      for (int k = 0; k < n; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / n;
        const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * k;
        coords(0, k) = rad * std::cos(phi);
        coords(1, k) = rad * std::sin(phi);
        coords(2, k) = z;
      }
      break;
    }
    case Dataset::SwissRoll: {
      // Jittered grid in (s, h), rolled up with t = 1.5 pi (1 + 2 s).
      coords.resize(3, n);
      const int cols = static_cast<int>(std::ceil(std::sqrt(2.0 * n)));
      const int rows = (n + cols - 1) / cols;
      for (int k = 0; k < n; ++k) {
        const double s = ((k % cols) + rng.uniform01()) / cols;
        const double h = ((k / cols) + rng.uniform01()) / rows;
        const double t = 1.5 * std::numbers::pi * (1.0 + 2.0 * s);
        coords(0, k) = t * std::cos(t);
        coords(1, k) = 21.0 * h;
        coords(2, k) = t * std::sin(t);
      }
      break;
    }
    case Dataset::RandomGaussian: {
      coords.resize(spec.ambient_dim, n);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < spec.ambient_dim; ++i) coords(i, k) = rng.normal();
      break;
    }
    default:
      throw std::logic_error("unreachable dataset kind");
  }
  return PointConfig(std::move(coords)).centered();
}

namespace {

struct SweepContext {
  const ExperimentSpec& spec;
  const PointConfig& truth;
  GramMatrix gram;
  double nu = 1.0;
  std::optional<SampleSet> fixed_samples;
};

TrialRecord run_trial(const SweepContext& ctx, int t) {
  const ExperimentSpec& spec = ctx.spec;
  const auto start = std::chrono::steady_clock::now();
  const int n = static_cast<int>(ctx.truth.count());
  TrialRecord rec;
  rec.trial = t;
  rec.seed = derive_seed(spec.base_seed, static_cast<std::uint64_t>(t));
  try {
    SampleSet omega = ctx.fixed_samples ? *ctx.fixed_samples
                      : spec.sampling == SamplingMode::Uniform
                          ? sample_uniform_replacement(n, samples_for_rate(n, spec.gamma), rec.seed)
                          : sample_structured(n, spec.structured, rec.seed);
    const Observations obs = measure(ctx.truth, omega);
    const int r = spec.solver.rank;
    LowRankFactor x0;
    if (spec.init == InitMode::OneStep) {
      x0 = init_one_step(obs, n, r);
    } else if (spec.init == InitMode::ShortestPath) {
      x0 = init_shortest_path(obs, n, r);
    } else {
      ResampleConfig rc = spec.resample;
      rc.rank = r;
      if (!(rc.nu > 0.0)) rc.nu = ctx.nu;
      x0 = init_resampled(obs, n, rc);
    }
    const SolverResult res = solve(obs, spec.solver, x0);
    rec.iterations = res.report.iterations;
    rec.status = to_string(res.report.status);

    Matrix recovered = res.factor.basis * res.factor.spectrum.asDiagonal() * res.factor.basis.transpose();
    rec.rel_gram_error = relative_gram_error(GramMatrix{std::move(recovered)}, ctx.gram);

    const PointsResult pts = run_to_points(res.factor, r);
    const Eigen::Index dim = std::max<Eigen::Index>(pts.points.dim(), ctx.truth.dim());
    rec.rmse = procrustes_align(pts.points.padded_to(dim), ctx.truth.padded_to(dim)).rmse;
  } catch (const std::exception& e) {
    rec.status = std::string("error: ") + e.what();
    rec.rel_gram_error = NAN;
    rec.rmse = NAN;
  }
  if (spec.timing) {
    rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  }
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, const PointConfig& truth) {
  spec.validate();
  SweepContext ctx{spec, truth, gram_from_points(truth), 1.0, std::nullopt};
  const int n = static_cast<int>(truth.count());
  if (!spec.samples_path.empty()) ctx.fixed_samples = read_samples(spec.samples_path, n);
  if (spec.init == InitMode::Resampled && !(spec.resample.nu > 0.0)) {
    ctx.nu = coherence_nu(truth_factor(ctx.gram, spec.solver.rank));
  }

  std::vector<TrialRecord> records(static_cast<std::size_t>(spec.trials));
  const int workers = std::min(spec.threads, spec.trials);
  if (workers <= 1) {
    for (int t = 0; t < spec.trials; ++t) records[static_cast<std::size_t>(t)] = run_trial(ctx, t);
    return records;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int t = next++; t < spec.trials; t = next++) {
        records[static_cast<std::size_t>(t)] = run_trial(ctx, t);
      }
    });
  }
  for (auto& th : pool) th.join();
  return records;
}

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  return run_experiment(spec, generate_dataset(spec));
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("write_csv: no records");
  char buf[256];
  out << "trial,seed,rel_gram_error,rmse,iterations,status,wall_ms\n";
  double rel = 0.0, rmse = 0.0, iters = 0.0, wall = 0.0;
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%d,%llu,%.6g,%.6g,%d,", r.trial,
                  static_cast<unsigned long long>(r.seed), r.rel_gram_error, r.rmse, r.iterations);
    out << buf << r.status << ',' << r.wall_ms << '\n';
    rel += r.rel_gram_error;
    rmse += r.rmse;
    iters += r.iterations;
    wall += static_cast<double>(r.wall_ms);
  }
  const double k = static_cast<double>(records.size());
  std::snprintf(buf, sizeof(buf), "mean,,%.6g,%.6g,%.6g,,%.6g\n", rel / k, rmse / k, iters / k, wall / k);
  out << buf;
}

void write_csv(const std::string& path, const std::vector<TrialRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_csv(out, records);
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace edg
