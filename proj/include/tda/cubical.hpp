#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "tda/filtration.hpp"
#include "tda/persistence.hpp"

namespace tda {

/// Scalar values on the top cells of a 1-, 2- or 3-dimensional grid,
/// stored x-fastest.
class CubicalGrid {
 public:
  CubicalGrid() = default;
  CubicalGrid(std::vector<std::size_t> shape, Eigen::VectorXd values);

  static CubicalGrid from_matrix(const Eigen::MatrixXd& image);  // rows = y, cols = x

  int rank() const { return static_cast<int>(shape_.size()); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
  double at(std::size_t x, std::size_t y = 0, std::size_t z = 0) const;

  CubicalGrid negated() const { return {shape_, -values_}; }
  CubicalGrid shifted(double c) const {
    return {shape_, (values_.array() + c).matrix()};
  }

 private:
  std::vector<std::size_t> shape_;
  Eigen::VectorXd values_;
};

/// Elementary cubes on the (2n+1)-lattice of a grid; labels are lattice
/// coordinates (odd coordinate = extent along that axis).
struct FilteredCubicalComplex {
  std::vector<std::size_t> lattice_shape;
  Filtration filtration{ComplexKind::cubical};
};

/// Top cells take their grid value, every face the minimum over its top-cell
/// cofaces. Cells ordered by (value, dimension, lattice coordinates).
FilteredCubicalComplex build_cubical_filtration(const CubicalGrid& grid);

/// Sublevel-set persistence; max_dim defaults to rank - 1.
PersistenceDiagram image_persistence(const CubicalGrid& grid, int max_dim = -1,
                                     const PersistenceOptions& options = {});

/// Rank-3 grids only; reports H0..H2.
PersistenceDiagram voxel_persistence(const CubicalGrid& grid, const PersistenceOptions& options = {});

/// Superlevel-set persistence, expressed in the filtration parameter t = -f:
/// the sublevel diagram of the negated grid.
PersistenceDiagram superlevel_persistence(const CubicalGrid& grid, int max_dim = -1,
                                          const PersistenceOptions& options = {});

/// Death substituted for essential points: max value plus one value range
/// (one unit when the grid is constant).
double essential_cap(const CubicalGrid& grid);

}  // namespace tda
