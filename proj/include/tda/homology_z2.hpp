#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tda/filtration.hpp"
#include "tda/simplex.hpp"

namespace tda {

/// Boundary matrix of one dimension over Z2, stored by column as sorted row
/// index lists. Rows and columns are labelled by their cells.
struct BoundaryMatrixZ2 {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::size_t>> columns;

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return col_labels.size(); }
  bool at(std::size_t row, std::size_t col) const;

  /// Aligned 0/1 table with a corner label, header row of column labels and
  /// one line per row.
  std::string to_table(const std::string& corner) const;
};

/// Boundary matrix of dimension k: rows are the (k-1)-simplices, columns the
/// k-simplices, both in lexicographic order. k = 0 gives a single zero row.
/// Labels print vertex ids, or vertex_names[id] when names are given.
BoundaryMatrixZ2 build_boundary_matrix(const FilteredSimplicialComplex& complex, int k,
                                       const std::vector<std::string>& vertex_names = {});

struct SnfResult {
  std::size_t rank = 0;
  /// (row, col) of each pivot in the input matrix coordinates.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  /// Diagonal form S*B*T: ones at (i, i) for i < rank, zeros elsewhere.
  std::vector<std::vector<std::uint8_t>> normal_form;
};

/// Smith normal form over Z2 by Gaussian elimination with full pivoting on
/// dense bit rows. Transform matrices are not kept.
SnfResult snf_rank(const BoundaryMatrixZ2& matrix);

/// Rank over Z2 of a matrix given as columns of sorted row indices.
std::size_t z2_rank(const std::vector<std::vector<std::size_t>>& columns, std::size_t rows);

using BettiVector = std::vector<std::size_t>;

/// beta_k = (#k-cells - rank d_k) - rank d_{k+1} for k = 0..max_dim.
BettiVector betti_numbers(const FilteredSimplicialComplex& complex, int max_dim);

/// Same formula on the sub-complex of cells with value <= threshold, using
/// the boundary structure of a generic filtration (simplicial or cubical).
BettiVector betti_numbers(const Filtration& filtration, int max_dim, double threshold);

/// Boundary matrix of dimension k of the first `prefix` cells of a
/// filtration, rows/cols in filtration order.
std::vector<std::vector<std::size_t>> boundary_columns(const Filtration& filtration, int k,
                                                       std::size_t prefix,
                                                       std::size_t* row_count = nullptr);

}  // namespace tda
