#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "tda/cubical.hpp"
#include "tda/persistence.hpp"
#include "tda/rips.hpp"

namespace tda::io {

/// One point per line, comma-separated; blank lines and lines starting with
/// '#' are skipped. Errors carry the 1-based line number.
PointCloud read_point_cloud(std::istream& in);
DistanceMatrix read_distance_matrix(std::istream& in);
void write_point_cloud(std::ostream& out, const Eigen::MatrixXd& points);

/// Header `dim,birth,death`; death `inf` for essential points; rows sorted
/// by (dim, birth, death); shortest round-trip decimal numbers.
void write_diagram(std::ostream& out, const PersistenceDiagram& diagram);
PersistenceDiagram read_diagram(std::istream& in);

/// PGM "P2"/"P5" and PPM "P3"/"P6" (RGB averaged to grey and scaled to
/// 0..255), maxval <= 65535.
CubicalGrid read_netpbm(std::istream& in);
void write_pgm(std::ostream& out, const CubicalGrid& grid);

/// Line 1 `nx ny nz`, then nx*ny*nz whitespace-separated values, x fastest.
CubicalGrid read_voxels(std::istream& in);
void write_voxels(std::ostream& out, const CubicalGrid& grid);

/// Grid loader used by the CLI: netpbm when the stream starts with 'P',
/// otherwise the voxel text format (nz = 1 gives a 2D grid when `flatten`).
CubicalGrid read_grid(std::istream& in, bool flatten);

/// Plain-text filtered complex: header, then one line per cell
/// `dim value nfaces face... : label...`.
void write_complex(std::ostream& out, const Filtration& filtration);
Filtration read_complex(std::istream& in);

std::string format_number(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace tda::io
