#pragma once

#include <iosfwd>
#include <string>

#include "edg/dual_basis.hpp"

namespace edg {

/// One line per distinct pair, "i j count", 1-based, sorted by (i, j).
void write_samples(std::ostream& out, const SampleSet& omega);
void write_samples(const std::string& path, const SampleSet& omega);

/// Inverse of write_samples. Blank lines and lines starting with '#' are
/// skipped; a missing count defaults to 1. Draw order follows the file.
SampleSet read_samples(std::istream& in, int n);
SampleSet read_samples(const std::string& path, int n);

}  // namespace edg
