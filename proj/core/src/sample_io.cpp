#include "edg/sample_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace edg {

void write_samples(std::ostream& out, const SampleSet& omega) {
  const auto& pairs = omega.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out << pairs[k].i + 1 << ' ' << pairs[k].j + 1 << ' ' << omega.counts()[k] << '\n';
  }
}

void write_samples(const std::string& path, const SampleSet& omega) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_samples(out, omega);
  if (!out) throw std::runtime_error(path + ": write failed");
}

SampleSet read_samples(std::istream& in, int n) {
  std::vector<IndexPair> draws;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long i = 0, j = 0, count = 1;
    if (!(fields >> i >> j)) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected \"i j [count]\"");
    }
    if (!(fields >> count)) count = 1;
    std::string rest;
    if (fields >> rest) throw std::runtime_error("line " + std::to_string(lineno) + ": trailing fields");
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n || i == j || count < 1) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": pair or count out of range");
    }
    for (long long c = 0; c < count; ++c) {
      draws.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1)});
    }
  }
  if (draws.empty()) throw std::runtime_error("sample file contains no pairs");
  return SampleSet(n, std::move(draws));
}

SampleSet read_samples(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  try {
    return read_samples(in, n);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace edg
