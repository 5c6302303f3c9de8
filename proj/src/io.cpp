#include "tda/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "tda/error.hpp"

namespace tda::io {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token, std::size_t line) {
  const std::string t = trim(token);
  if (t == "inf" || t == "+inf") return infinity;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw InputError("line " + std::to_string(line) + ": cannot parse number '" + t + "'");
  }
  return v;
}

std::vector<std::vector<double>> read_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<double> row;
    std::stringstream fields(t);
    std::string field;
    while (std::getline(fields, field, ',')) {
      const double v = parse_double(field, number);
      if (!std::isfinite(v)) throw InputError("line " + std::to_string(number) + ": non-finite value");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError("line " + std::to_string(number) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, got " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

// Netpbm header tokens, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  char c = 0;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      if (!token.empty()) return token;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(c);
  }
  return token;
}

std::size_t parse_size(const std::string& token, const std::string& what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw InputError("malformed " + what + " '" + token + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  if (ec != std::errc()) throw InvariantError("number formatting failed");
  return std::string(buffer, ptr);
}

PointCloud read_point_cloud(std::istream& in) {
  const auto rows = read_rows(in);
  if (rows.empty()) throw InputError("no points");
  return PointCloud(to_matrix(rows));
}

DistanceMatrix read_distance_matrix(std::istream& in) {
  const auto rows = read_rows(in);
  if (rows.empty()) throw InputError("no points");
  if (rows.size() != rows.front().size()) throw InputError("distance matrix is not square");
  return DistanceMatrix(to_matrix(rows));
}

void write_point_cloud(std::ostream& out, const Eigen::MatrixXd& points) {
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      out << (j ? "," : "") << format_number(points(i, j));
    }
    out << '\n';
  }
}

void write_diagram(std::ostream& out, const PersistenceDiagram& diagram) {
  auto points = diagram.points;
  std::sort(points.begin(), points.end());
  out << "dim,birth,death\n";
  for (const auto& p : points) {
    out << p.dim << ',' << format_number(p.birth) << ',' << format_number(p.death) << '\n';
  }
}

PersistenceDiagram read_diagram(std::istream& in) {
  PersistenceDiagram diagram;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header) {
      if (t != "dim,birth,death") throw InputError("line " + std::to_string(number) + ": expected header dim,birth,death");
      header = true;
      continue;
    }
    std::stringstream fields(t);
    std::string f0, f1, f2, extra;
    if (!std::getline(fields, f0, ',') || !std::getline(fields, f1, ',') ||
        !std::getline(fields, f2, ',') || std::getline(fields, extra, ',')) {
      throw InputError("line " + std::to_string(number) + ": expected 3 fields");
    }
    DiagramPoint p;
    p.dim = static_cast<int>(parse_double(f0, number));
    p.birth = parse_double(f1, number);
    p.death = parse_double(f2, number);
    if (!std::isfinite(p.birth) || p.death < p.birth || p.dim < 0) {
      throw InputError("line " + std::to_string(number) + ": invalid diagram point");
    }
    diagram.points.push_back(p);
  }
  if (!header) throw InputError("empty diagram file (missing header)");
  return diagram;
}

CubicalGrid read_netpbm(std::istream& in) {
  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5" && magic != "P3" && magic != "P6") {
    throw InputError("malformed header: unsupported netpbm magic '" + magic + "'");
  }
  const bool rgb = magic == "P3" || magic == "P6";
  const bool binary = magic == "P5" || magic == "P6";
  const std::size_t width = parse_size(next_token(in), "header width");
  const std::size_t height = parse_size(next_token(in), "header height");
  const std::size_t maxval = parse_size(next_token(in), "header maxval");
  if (width == 0 || height == 0) throw InputError("malformed header: zero image size");
  if (maxval == 0 || maxval > 65535) throw InputError("malformed header: maxval out of range");
  const std::size_t channels = rgb ? 3 : 1;
  const std::size_t count = width * height * channels;

  std::vector<double> samples;
  samples.reserve(count);
  if (binary) {
    const std::size_t bytes = maxval > 255 ? 2 : 1;
    for (std::size_t k = 0; k < count; ++k) {
      unsigned value = 0;
      for (std::size_t b = 0; b < bytes; ++b) {
        char c = 0;
        if (!in.get(c)) {
          throw InputError("pixel data truncated at sample " + std::to_string(k) + " of " +
                           std::to_string(count));
        }
        value = (value << 8) | static_cast<unsigned char>(c);
      }
      samples.push_back(value);
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const std::string token = next_token(in);
      if (token.empty()) {
        throw InputError("pixel data truncated at sample " + std::to_string(k) + " of " +
                         std::to_string(count));
      }
      samples.push_back(static_cast<double>(parse_size(token, "sample " + std::to_string(k))));
    }
    if (!next_token(in).empty()) throw InputError("more pixel samples than " + std::to_string(count));
  }
  for (double s : samples) {
    if (s > static_cast<double>(maxval)) throw InputError("sample exceeds maxval");
  }

  Eigen::VectorXd values(static_cast<Eigen::Index>(width * height));
  for (std::size_t p = 0; p < width * height; ++p) {
    if (rgb) {
      const double mean = (samples[3 * p] + samples[3 * p + 1] + samples[3 * p + 2]) / 3.0;
      values[static_cast<Eigen::Index>(p)] = mean * 255.0 / static_cast<double>(maxval);
    } else {
      values[static_cast<Eigen::Index>(p)] = samples[p];
    }
  }
  return CubicalGrid({width, height}, std::move(values));
}

void write_pgm(std::ostream& out, const CubicalGrid& grid) {
  if (grid.rank() != 2) throw ParameterError("PGM output needs a 2D grid");
  const auto& values = grid.values();
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  out << "P2\n" << grid.shape()[0] << ' ' << grid.shape()[1] << "\n255\n";
  for (std::size_t y = 0; y < grid.shape()[1]; ++y) {
    for (std::size_t x = 0; x < grid.shape()[0]; ++x) {
      const double v = hi > lo ? (grid.at(x, y) - lo) / (hi - lo) : 0.0;
      out << (x ? " " : "") << static_cast<int>(std::lround(v * 255.0));
    }
    out << '\n';
  }
}

CubicalGrid read_voxels(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  std::size_t dims[3] = {0, 0, 0};
  bool have_header = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::stringstream tokens(t);
    std::string token;
    if (!have_header) {
      std::size_t k = 0;
      while (tokens >> token) {
        if (k == 3) throw InputError("line " + std::to_string(number) + ": header has more than 3 sizes");
        dims[k++] = parse_size(token, "line " + std::to_string(number) + " size");
      }
      if (k != 3 || dims[0] == 0 || dims[1] == 0 || dims[2] == 0) {
        throw InputError("line " + std::to_string(number) + ": expected header 'nx ny nz'");
      }
      have_header = true;
      continue;
    }
    while (tokens >> token) {
      const double v = parse_double(token, number);
      if (!std::isfinite(v)) throw InputError("line " + std::to_string(number) + ": non-finite value");
      values.push_back(v);
      if (values.size() > dims[0] * dims[1] * dims[2]) {
        throw InputError("line " + std::to_string(number) + ": more values than " +
                         std::to_string(dims[0] * dims[1] * dims[2]));
      }
    }
  }
  if (!have_header) throw InputError("missing voxel header");
  const std::size_t expected = dims[0] * dims[1] * dims[2];
  if (values.size() != expected) {
    throw InputError("dimension mismatch: header expects " + std::to_string(expected) +
                     " values, found " + std::to_string(values.size()));
  }
  return CubicalGrid({dims[0], dims[1], dims[2]},
                     Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
}

void write_voxels(std::ostream& out, const CubicalGrid& grid) {
  std::size_t dims[3] = {1, 1, 1};
  for (int a = 0; a < grid.rank(); ++a) dims[a] = grid.shape()[static_cast<std::size_t>(a)];
  out << dims[0] << ' ' << dims[1] << ' ' << dims[2] << '\n';
  for (std::size_t row = 0; row < dims[1] * dims[2]; ++row) {
    for (std::size_t x = 0; x < dims[0]; ++x) {
      out << (x ? " " : "") << format_number(grid[row * dims[0] + x]);
    }
    out << '\n';
  }
}

CubicalGrid read_grid(std::istream& in, bool flatten) {
  const int first = in.peek();
  if (first == 'P') return read_netpbm(in);
  CubicalGrid grid = read_voxels(in);
  if (flatten && grid.shape()[2] == 1) {
    return CubicalGrid({grid.shape()[0], grid.shape()[1]}, grid.values());
  }
  return grid;
}

void write_complex(std::ostream& out, const Filtration& f) {
  out << "# tda filtered complex v1\n";
  out << "kind " << (f.kind() == ComplexKind::simplicial ? "simplicial" : "cubical") << '\n';
  out << "cells " << f.size() << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << f.dim(i) << ' ' << format_number(f.value(i)) << ' ' << f.boundary(i).size();
    for (CellIndex face : f.boundary(i)) out << ' ' << face;
    out << " :";
    for (auto l : f.label(i)) out << ' ' << l;
    out << '\n';
  }
}

Filtration read_complex(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++number;
      const std::string t = trim(line);
      if (!t.empty() && t.front() != '#') {
        line = t;
        return true;
      }
    }
    return false;
  };
  if (!next_line() || line.rfind("kind ", 0) != 0) throw InputError("complex file: missing 'kind' line");
  const std::string kind = trim(line.substr(5));
  if (kind != "simplicial" && kind != "cubical") throw InputError("complex file: unknown kind '" + kind + "'");
  if (!next_line() || line.rfind("cells ", 0) != 0) throw InputError("complex file: missing 'cells' line");
  const std::size_t count = parse_size(trim(line.substr(6)), "cell count");

  Filtration f(kind == "simplicial" ? ComplexKind::simplicial : ComplexKind::cubical);
  std::vector<CellIndex> faces;
  std::vector<std::int32_t> label;
  for (std::size_t c = 0; c < count; ++c) {
    if (!next_line()) throw InputError("complex file: expected " + std::to_string(count) + " cells");
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw InputError("line " + std::to_string(number) + ": missing ':'");
    std::stringstream head(line.substr(0, colon));
    std::stringstream tail(line.substr(colon + 1));
    std::string dim_token, value_token, nfaces_token;
    if (!(head >> dim_token >> value_token >> nfaces_token)) {
      throw InputError("line " + std::to_string(number) + ": malformed cell");
    }
    const std::size_t dim = parse_size(dim_token, "dimension");
    const double value = parse_double(value_token, number);
    const std::size_t nfaces = parse_size(nfaces_token, "face count");
    faces.clear();
    label.clear();
    std::string token;
    for (std::size_t k = 0; k < nfaces; ++k) {
      if (!(head >> token)) throw InputError("line " + std::to_string(number) + ": missing face index");
      faces.push_back(static_cast<CellIndex>(parse_size(token, "face index")));
    }
    while (tail >> token) {
      long v = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw InputError("line " + std::to_string(number) + ": malformed label");
      }
      label.push_back(static_cast<std::int32_t>(v));
    }
    if (c > 0 && value < f.value(c - 1)) {
      throw InputError("line " + std::to_string(number) + ": cell values are not sorted");
    }
    try {
      f.push_back(static_cast<int>(dim), value, faces, label);
    } catch (const InvariantError& e) {
      throw InputError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return f;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << contents;
}

}  // namespace tda::io
