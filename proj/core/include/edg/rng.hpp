#pragma once

#include <cstdint>

namespace edg {

/// Named substreams so that every stochastic stage of an experiment draws from
/// its own sequence. Adding a stage never perturbs the others.
enum class Stream : std::uint64_t {
  Dataset = 1,
  Sampling = 2,
  Partition = 3,
  PowerIteration = 4,
  Perturbation = 5,
  Eigensolver = 6,
};

/// Counter-based generator: the k-th output is a pure function of
/// (seed, stream, k), built on the SplitMix64 finalizer. Satisfies
/// UniformRandomBitGenerator, but the helpers below should be preferred over
/// <random> distributions, whose output is not specified bit-for-bit.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);
  CounterRng(std::uint64_t seed, Stream stream)
      : CounterRng(seed, static_cast<std::uint64_t>(stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Unbiased uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal deviate (Box-Muller, second value cached).
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t x);

/// Seed for the index-th child of a base seed (e.g. trial t of a sweep).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace edg
