#include "tda/cubical.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "tda/error.hpp"

namespace tda {

CubicalGrid::CubicalGrid(std::vector<std::size_t> shape, Eigen::VectorXd values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (shape_.empty() || shape_.size() > 3) throw ParameterError("grid rank must be 1, 2 or 3");
  std::size_t count = 1;
  for (std::size_t n : shape_) {
    if (n == 0) throw ParameterError("empty grid");
    count *= n;
  }
  if (count != static_cast<std::size_t>(values_.size())) {
    throw InputError("grid expects " + std::to_string(count) + " values, got " +
                     std::to_string(values_.size()));
  }
  if (!values_.allFinite()) throw InputError("non-finite grid value");
}

CubicalGrid CubicalGrid::from_matrix(const Eigen::MatrixXd& image) {
  Eigen::VectorXd values(image.size());
  Eigen::Index k = 0;
  for (Eigen::Index y = 0; y < image.rows(); ++y) {
    for (Eigen::Index x = 0; x < image.cols(); ++x) values[k++] = image(y, x);
  }
  return {{static_cast<std::size_t>(image.cols()), static_cast<std::size_t>(image.rows())},
          std::move(values)};
}

double CubicalGrid::at(std::size_t x, std::size_t y, std::size_t z) const {
  std::array<std::size_t, 3> dims{1, 1, 1};
  std::copy(shape_.begin(), shape_.end(), dims.begin());
  return values_[static_cast<Eigen::Index>(x + dims[0] * (y + dims[1] * z))];
}

double essential_cap(const CubicalGrid& grid) {
  const double max = grid.values().maxCoeff();
  const double range = max - grid.values().minCoeff();
  return max + (range > 0 ? range : 1.0);
}

FilteredCubicalComplex build_cubical_filtration(const CubicalGrid& grid) {
  if (grid.size() == 0) throw ParameterError("empty grid");
  const int rank = grid.rank();
  std::array<std::size_t, 3> lattice{1, 1, 1};
  for (int a = 0; a < rank; ++a) lattice[static_cast<std::size_t>(a)] = 2 * grid.shape()[static_cast<std::size_t>(a)] + 1;
  const std::size_t total = lattice[0] * lattice[1] * lattice[2];
  const std::array<std::size_t, 3> stride{1, lattice[0], lattice[0] * lattice[1]};

  auto coords_of = [&](std::size_t p) {
    return std::array<std::size_t, 3>{p % lattice[0], (p / lattice[0]) % lattice[1],
                                      p / (lattice[0] * lattice[1])};
  };

  // Separable minimum: after the pass along axis a, every point with even
  // coordinate a holds the min over its top cells reachable through a.
  std::vector<double> value(total, infinity);
  std::vector<std::int8_t> dim(total, 0);
  for (std::size_t p = 0; p < total; ++p) {
    const auto c = coords_of(p);
    int odd = 0;
    for (int a = 0; a < rank; ++a) odd += static_cast<int>(c[static_cast<std::size_t>(a)] & 1u);
    dim[p] = static_cast<std::int8_t>(odd);
    if (odd == rank) value[p] = grid.at(c[0] / 2, c[1] / 2, c[2] / 2);
  }
  for (int a = 0; a < rank; ++a) {
    const auto au = static_cast<std::size_t>(a);
    for (std::size_t p = 0; p < total; ++p) {
      const auto c = coords_of(p);
      if (c[au] & 1u) continue;
      double v = infinity;
      if (c[au] > 0) v = std::min(v, value[p - stride[au]]);
      if (c[au] + 1 < lattice[au]) v = std::min(v, value[p + stride[au]]);
      value[p] = v;
    }
  }

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Lattice order is z-major; compare (z, y, x) reversed to get (x, y, z) lex.
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
    if (value[p] != value[q]) return value[p] < value[q];
    if (dim[p] != dim[q]) return dim[p] < dim[q];
    const auto cp = coords_of(p);
    const auto cq = coords_of(q);
    return cp < cq;
  });

  FilteredCubicalComplex complex;
  complex.lattice_shape.assign(lattice.begin(), lattice.begin() + rank);
  complex.filtration.reserve(total, total * 2 * static_cast<std::size_t>(rank),
                             total * static_cast<std::size_t>(rank));
  std::vector<CellIndex> index(total, 0);
  std::vector<CellIndex> faces;
  std::vector<std::int32_t> label(static_cast<std::size_t>(rank));
  for (std::size_t p : order) {
    const auto c = coords_of(p);
    faces.clear();
    for (int a = 0; a < rank; ++a) {
      const auto au = static_cast<std::size_t>(a);
      label[au] = static_cast<std::int32_t>(c[au]);
      if (c[au] & 1u) {
        faces.push_back(index[p - stride[au]]);
        faces.push_back(index[p + stride[au]]);
      }
    }
    index[p] = complex.filtration.push_back(dim[p], value[p], faces, label);
  }
  return complex;
}

PersistenceDiagram image_persistence(const CubicalGrid& grid, int max_dim,
                                     const PersistenceOptions& options) {
  if (max_dim < 0) max_dim = grid.rank() - 1;
  const auto complex = build_cubical_filtration(grid);
  auto diagram = compute_persistence(complex.filtration, max_dim, options).diagram;
  diagram.metadata.filtration = "sublevel";
  diagram.metadata.scale_convention = "value";
  diagram.metadata.essential_cap = essential_cap(grid);
  return diagram;
}

PersistenceDiagram voxel_persistence(const CubicalGrid& grid, const PersistenceOptions& options) {
  if (grid.rank() != 3) throw ParameterError("voxel persistence needs a rank-3 grid");
  return image_persistence(grid, 2, options);
}

PersistenceDiagram superlevel_persistence(const CubicalGrid& grid, int max_dim,
                                          const PersistenceOptions& options) {
  auto diagram = image_persistence(grid.negated(), max_dim, options);
  diagram.metadata.filtration = "superlevel";
  return diagram;
}

}  // namespace tda
