#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edg/init.hpp"
#include "edg/sampling.hpp"
#include "edg/solvers.hpp"

namespace edg {

enum class Dataset { Sphere, SwissRoll, Cow, Cities, RandomGaussian, XyzFile, PdbFile };
enum class SamplingMode { Uniform, Structured };
enum class InitMode { OneStep, Resampled, ShortestPath };

Dataset parse_dataset(const std::string& name);
std::string to_string(Dataset d);

struct ExperimentSpec {
  Dataset dataset = Dataset::Sphere;
  std::string path;  ///< required for file-backed datasets
  int n = 1002;
  int ambient_dim = 3;
  SolverConfig solver;
  SamplingMode sampling = SamplingMode::Uniform;
  double gamma = 0.1;
  StructuredSpec structured;
  /// When set, every trial reuses this sample file instead of drawing.
  std::string samples_path;
  InitMode init = InitMode::OneStep;
  /// nu <= 0 means: estimate it from the ground truth.
  ResampleConfig resample{0, 0.0, 3};
  int trials = 25;
  std::uint64_t base_seed = 7;
  int threads = 1;
  /// Fill wall_ms; off by default so that output is reproducible.
  bool timing = false;

  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double rel_gram_error = 0.0;
  double rmse = 0.0;
  int iterations = 0;
  std::string status;
  std::int64_t wall_ms = 0;
};

/// Synthetic datasets are generated from base_seed; file-backed ones are read
/// from spec.path. The result is centered.
PointConfig generate_dataset(const ExperimentSpec& spec);

/// Runs all trials on the given ground truth. Trial t uses
/// derive_seed(base_seed, t), so serial and threaded sweeps agree exactly.
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, const PointConfig& truth);
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec);

/// Header, one row per record, then a "mean" row. %.6g, LF endings.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_csv(const std::string& path, const std::vector<TrialRecord>& records);

}  // namespace edg
