#include "edg/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace edg {

namespace {

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r' || line[pos] == ',')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r' && line[pos] != ',') ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

PointConfig from_rows(const std::vector<double>& flat, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(flat.size() / dim);
  Matrix coords(static_cast<Eigen::Index>(dim), n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(dim); ++i)
      coords(i, j) = flat[static_cast<std::size_t>(j) * dim + static_cast<std::size_t>(i)];
  PointConfig p(std::move(coords));
  // Leave already-centered input untouched so write/read round trips are exact.
  return p.is_centered() ? p : p.centered();
}

template <typename Fn>
auto with_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace

PointConfig ingest_xyz(std::istream& in) {
  std::vector<double> flat;
  std::size_t dim = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto fields = split_ws(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (dim == 0) {
      dim = fields.size();
    } else if (fields.size() != dim) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                               " columns, found " + std::to_string(fields.size()));
    }
    for (const auto f : fields) {
      double v = 0.0;
      if (!parse_double(f, v)) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": cannot parse \"" + std::string(f) + "\"");
      }
      flat.push_back(v);
    }
  }
  if (flat.empty()) throw std::runtime_error("no coordinates found");
  return from_rows(flat, dim);
}

PointConfig ingest_xyz(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return with_path(path, [&] { return ingest_xyz(in); });
}

void write_xyz(std::ostream& out, const PointConfig& p) {
  char buf[40];
  const Matrix& c = p.coords();
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", c(i, j));
      if (i > 0) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

void write_xyz(const std::string& path, const PointConfig& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_xyz(out, p);
  if (!out) throw std::runtime_error(path + ": write failed");
}

PointConfig ingest_pdb(std::istream& in, const PdbOptions& opts) {
  std::vector<double> flat;
  std::string line;
  int record = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (opts.first_model_only && line.rfind("ENDMDL", 0) == 0 && !flat.empty()) break;
    const bool atom = line.rfind("ATOM", 0) == 0;
    const bool het = opts.include_hetatm && line.rfind("HETATM", 0) == 0;
    if (!atom && !het) continue;
    ++record;
    if (line.size() < 54) {
      throw std::runtime_error("record " + std::to_string(record) + " (line " + std::to_string(lineno) +
                               "): line too short for coordinates");
    }
    const std::string_view view(line);
    for (std::size_t start : {30u, 38u, 46u}) {
      double v = 0.0;
      if (!parse_double(view.substr(start, 8), v)) {
        throw std::runtime_error("record " + std::to_string(record) + " (line " + std::to_string(lineno) +
                                 "): malformed coordinate field");
      }
      flat.push_back(v);
    }
  }
  if (flat.empty()) throw std::runtime_error("no ATOM records found");
  return from_rows(flat, 3);
}

PointConfig ingest_pdb(const std::string& path, const PdbOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return with_path(path, [&] { return ingest_pdb(in, opts); });
}

}  // namespace edg
