#pragma once

#include <iosfwd>
#include <string>

#include "edg/geometry.hpp"

namespace edg {

/// Whitespace-separated coordinates, one point per line; the column count
/// gives the dimension. Blank lines and '#' comments are skipped. The result
/// is centered. Errors carry the line number.
PointConfig ingest_xyz(std::istream& in);
PointConfig ingest_xyz(const std::string& path);

/// One point per line with 17 significant digits, so that reading back is
/// bit-exact.
void write_xyz(std::ostream& out, const PointConfig& p);
void write_xyz(const std::string& path, const PointConfig& p);

struct PdbOptions {
  bool include_hetatm = false;
  /// Stop at the first ENDMDL (first model only).
  bool first_model_only = true;
};

/// x, y, z from columns 31-38, 39-46, 47-54 of ATOM (optionally HETATM)
/// records. The result is centered.
PointConfig ingest_pdb(std::istream& in, const PdbOptions& opts = {});
PointConfig ingest_pdb(const std::string& path, const PdbOptions& opts = {});

}  // namespace edg
