// edg: experiment runner and verification front end.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "edg/diagnostics.hpp"
#include "edg/experiment.hpp"
#include "edg/rng.hpp"
#include "edg/sample_io.hpp"
#include "edg/verify.hpp"

namespace {

struct RunOptions {
  std::string dataset = "sphere";
  std::string file;
  int n = 1002;
  int dim = 3;
  int rank = 3;
  double gamma = 0.10;
  std::string alg = "frame";
  std::string init = "onestep";
  int partitions = 0;
  double nu = 0.0;
  std::string sampling = "uniform";
  int anchors = 20;
  int central = 0;  // 1-based on the command line; 0 = default
  double erate = 0.3;
  int k = 6;
  int trials = 25;
  std::uint64_t seed = 7;
  int max_iters = 0;  // 0 = default for the sampling mode
  double tol = 1e-5;
  int threads = 1;
  bool timing = false;
  std::string samples;
  std::string out;
  std::string config;
};

// CLI11 only reads config files attached to the root app, so the
// subcommand's flat file is expanded into ordinary "--key=value" arguments.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  auto given = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
    const std::string flag = "--" + item.name;
    if (given(flag)) continue;
    for (const auto& value : item.inputs) args.push_back(flag + "=" + value);
  }
  return args;
}

void add_problem_options(CLI::App* app, RunOptions& o) {
  // Consumed by expand_config before parsing; declared so that it shows in --help.
  app->add_option("--config", o.config, "flat key=value file; explicit flags take precedence");
  app->add_option("--dataset", o.dataset, "sphere|swissroll|gaussian|cow|cities|xyz|pdb")
      ->capture_default_str();
  app->add_option("--file", o.file, "coordinate file for cow/cities/xyz/pdb");
  app->add_option("--n", o.n, "number of points (synthetic datasets)")->capture_default_str();
  app->add_option("--dim", o.dim, "ambient dimension for the gaussian dataset")->capture_default_str();
  app->add_option("--rank", o.rank, "manifold rank")->capture_default_str();
  app->add_option("--gamma", o.gamma, "uniform sampling rate")->capture_default_str();
  app->add_option("--sampling", o.sampling, "uniform|structured")->capture_default_str();
  app->add_option("--anchors", o.anchors, "pseudoanchor count")->capture_default_str();
  app->add_option("--central", o.central, "1-based central node (0 = median non-anchor)");
  app->add_option("--erate", o.erate, "pseudoanchor block rate")->capture_default_str();
  app->add_option("--k", o.k, "pseudoanchor partners per mobile node")->capture_default_str();
  app->add_option("--seed", o.seed, "base seed")->capture_default_str();
  app->add_option("--samples", o.samples, "sample file (\"i j count\" lines) used for every trial");
}

edg::ExperimentSpec to_spec(const RunOptions& o) {
  edg::ExperimentSpec spec;
  spec.dataset = edg::parse_dataset(o.dataset);
  spec.path = o.file;
  spec.n = o.n;
  spec.ambient_dim = o.dim;
  spec.solver.rank = o.rank;
  spec.solver.rel_tol = o.tol;
  if (o.alg == "frame") {
    spec.solver.variant = edg::Variant::FrameDescent;
  } else if (o.alg == "pseudo") {
    spec.solver.variant = edg::Variant::PseudoGradient;
  } else {
    throw std::invalid_argument("unknown algorithm \"" + o.alg + "\"");
  }
  if (o.sampling == "uniform") {
    spec.sampling = edg::SamplingMode::Uniform;
  } else if (o.sampling == "structured") {
    spec.sampling = edg::SamplingMode::Structured;
  } else {
    throw std::invalid_argument("unknown sampling \"" + o.sampling + "\"");
  }
  spec.solver.max_iters = o.max_iters > 0 ? o.max_iters
                          : spec.sampling == edg::SamplingMode::Structured ? 10000
                                                                           : 1000;
  spec.gamma = o.gamma;
  spec.structured = {o.anchors, o.central - 1, o.erate, o.k};
  if (o.init == "onestep") {
    spec.init = edg::InitMode::OneStep;
  } else if (o.init == "resample") {
    spec.init = edg::InitMode::Resampled;
  } else if (o.init == "sp") {
    spec.init = edg::InitMode::ShortestPath;
  } else {
    throw std::invalid_argument("unknown init \"" + o.init + "\"");
  }
  spec.resample = {o.partitions, o.nu, o.rank};
  spec.trials = o.trials;
  spec.base_seed = o.seed;
  spec.threads = o.threads;
  spec.timing = o.timing;
  spec.samples_path = o.samples;
  return spec;
}

edg::SampleSet draw_samples(const edg::ExperimentSpec& spec, int n, std::uint64_t seed) {
  if (!spec.samples_path.empty()) return edg::read_samples(spec.samples_path, n);
  if (spec.sampling == edg::SamplingMode::Uniform) {
    return edg::sample_uniform_replacement(n, edg::samples_for_rate(n, spec.gamma), seed);
  }
  return edg::sample_structured(n, spec.structured, seed);
}

int cmd_run(const RunOptions& o) {
  const edg::ExperimentSpec spec = to_spec(o);
  const auto records = edg::run_experiment(spec);
  if (o.out.empty() || o.out == "-") {
    edg::write_csv(std::cout, records);
  } else {
    edg::write_csv(o.out, records);
  }
  return 0;
}

int cmd_verify(std::uint64_t seed) {
  const auto results = edg::run_property_suite(seed);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s  %-52s observed=%.3g tol=%.3g\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.observed, r.tolerance);
    if (!r.passed) ++failed;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 2;
}

int cmd_diag(const RunOptions& o, int power_iters) {
  const edg::ExperimentSpec spec = to_spec(o);
  const edg::PointConfig truth = edg::generate_dataset(spec);
  const int n = static_cast<int>(truth.count());
  const edg::SampleSet omega = draw_samples(spec, n, edg::derive_seed(spec.base_seed, 0));
  const edg::DiagnosticsReport rep =
      edg::diagnose(edg::gram_from_points(truth), o.rank, omega, power_iters, spec.base_seed);
  const std::string text = edg::format_report(rep);
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error(o.out + ": cannot open for writing");
    f << text;
  }
  return 0;
}

int cmd_sample(const RunOptions& o) {
  const edg::ExperimentSpec spec = to_spec(o);
  const int n = spec.dataset == edg::Dataset::Sphere || spec.dataset == edg::Dataset::SwissRoll ||
                        spec.dataset == edg::Dataset::RandomGaussian
                    ? spec.n
                    : static_cast<int>(edg::generate_dataset(spec).count());
  const edg::SampleSet omega = draw_samples(spec, n, edg::derive_seed(spec.base_seed, 0));
  if (o.out.empty() || o.out == "-") {
    edg::write_samples(std::cout, omega);
  } else {
    edg::write_samples(o.out, omega);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance geometry reconstruction by Riemannian descent on fixed-rank Gram matrices"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "run a trial sweep and write CSV");
  add_problem_options(run, run_opts);
  run->add_option("--alg", run_opts.alg, "frame|pseudo")->capture_default_str();
  run->add_option("--init", run_opts.init, "onestep|resample|sp")->capture_default_str();
  run->add_option("--partitions", run_opts.partitions, "resampling partitions S")->capture_default_str();
  run->add_option("--nu", run_opts.nu, "trim coherence (0 = estimate from truth)");
  run->add_option("--trials", run_opts.trials, "number of trials")->capture_default_str();
  run->add_option("--max-iters", run_opts.max_iters, "iteration cap (default 1000, structured 10000)");
  run->add_option("--tol", run_opts.tol, "relative change tolerance")->capture_default_str();
  run->add_option("--threads", run_opts.threads, "worker threads")->capture_default_str();
  run->add_flag("--timing", run_opts.timing, "fill the wall_ms column");
  run->add_option("--out", run_opts.out, "CSV path (default stdout)");

  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "run the dual-basis and diagnostics property suite");
  verify->add_option("--seed", verify_seed, "seed")->capture_default_str();

  RunOptions diag_opts;
  int power_iters = 200;
  auto* diag = app.add_subcommand("diag", "print coherence, mu1, kappa and the RIP deviation");
  add_problem_options(diag, diag_opts);
  diag->add_option("--power-iters", power_iters, "power iteration cap")->capture_default_str();
  diag->add_option("--out", diag_opts.out, "output path (default stdout)");

  RunOptions sample_opts;
  auto* sample = app.add_subcommand("sample", "draw a sample set and write it as \"i j count\" lines");
  add_problem_options(sample, sample_opts);
  sample->add_option("--out", sample_opts.out, "output path (default stdout)");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*verify) return cmd_verify(verify_seed);
    if (*diag) return cmd_diag(diag_opts, power_iters);
    if (*sample) return cmd_sample(sample_opts);
  } catch (const std::exception& e) {
    std::cerr << "edg: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
