#include "tda/homology_z2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "tda/error.hpp"

namespace tda {
namespace {

using Word = std::uint64_t;

/// Dense Z2 matrix with rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1u; }
  void set(std::size_t r, std::size_t c) { row(r)[c / 64] |= Word{1} << (c % 64); }
  void flip(std::size_t r, std::size_t c) { row(r)[c / 64] ^= Word{1} << (c % 64); }

  void add_row(std::size_t target, std::size_t source) {
    for (std::size_t w = 0; w < words_; ++w) row(target)[w] ^= row(source)[w];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < words_; ++w) std::swap(row(a)[w], row(b)[w]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) {
      const bool x = get(r, a);
      const bool y = get(r, b);
      if (x != y) {
        flip(r, a);
        flip(r, b);
      }
    }
  }
  // Adds column `source` into column `target`.
  void add_col(std::size_t target, std::size_t source) {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (get(r, source)) flip(r, target);
    }
  }

  /// First set bit at or after (from_row, from_col) in the trailing block,
  /// scanning rows in order.
  bool find_pivot(std::size_t from, std::size_t& out_row, std::size_t& out_col) const {
    for (std::size_t r = from; r < rows_; ++r) {
      for (std::size_t w = from / 64; w < words_; ++w) {
        Word bits = row(r)[w];
        if (w == from / 64) bits &= ~Word{0} << (from % 64);
        if (bits) {
          out_row = r;
          out_col = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          return true;
        }
      }
    }
    return false;
  }

 private:
  Word* row(std::size_t r) { return bits_.data() + r * words_; }
  const Word* row(std::size_t r) const { return bits_.data() + r * words_; }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<Word> bits_;
};

BitMatrix to_bits(const std::vector<std::vector<std::size_t>>& columns, std::size_t rows) {
  BitMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t r : columns[c]) {
      if (r >= rows) throw InvariantError("boundary entry outside the row range");
      m.flip(r, c);
    }
  }
  return m;
}

struct Elimination {
  std::size_t rank = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
};

/// Full-pivoting elimination to diagonal form. Pivot coordinates are tracked
/// back to the original rows and columns through the permutations applied.
Elimination eliminate(BitMatrix& m) {
  Elimination result;
  std::vector<std::size_t> row_of(m.rows());
  std::vector<std::size_t> col_of(m.cols());
  for (std::size_t i = 0; i < row_of.size(); ++i) row_of[i] = i;
  for (std::size_t i = 0; i < col_of.size(); ++i) col_of[i] = i;

  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t k = 0; k < limit; ++k) {
    std::size_t pr = 0;
    std::size_t pc = 0;
    if (!m.find_pivot(k, pr, pc)) break;
    m.swap_rows(k, pr);
    std::swap(row_of[k], row_of[pr]);
    m.swap_cols(k, pc);
    std::swap(col_of[k], col_of[pc]);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != k && m.get(r, k)) m.add_row(r, k);
    }
    for (std::size_t c = k + 1; c < m.cols(); ++c) {
      if (m.get(k, c)) m.add_col(c, k);
    }
    result.pivots.emplace_back(row_of[k], col_of[k]);
    ++result.rank;
  }
  return result;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string simplex_label(std::span<const Vertex> vertices, const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out += ',';
    const auto v = static_cast<std::size_t>(vertices[i]);
    out += v < names.size() ? names[v] : std::to_string(vertices[i]);
  }
  return out + "]";
}

}  // namespace

bool BoundaryMatrixZ2::at(std::size_t row, std::size_t col) const {
  const auto& c = columns.at(col);
  return std::binary_search(c.begin(), c.end(), row);
}

std::string BoundaryMatrixZ2::to_table(const std::string& corner) const {
  std::size_t width = corner.size();
  for (const auto& l : row_labels) width = std::max(width, l.size());
  std::vector<std::size_t> col_width(cols());
  for (std::size_t c = 0; c < cols(); ++c) col_width[c] = std::max<std::size_t>(1, col_labels[c].size());

  std::ostringstream out;
  out << pad(corner, width) << " |";
  for (std::size_t c = 0; c < cols(); ++c) out << ' ' << pad(col_labels[c], col_width[c]);
  out << '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    out << pad(row_labels[r], width) << " |";
    std::string line;
    for (std::size_t c = 0; c < cols(); ++c) {
      // entry centred under its label
      const std::size_t left = (col_width[c] - 1) / 2;
      line += ' ' + std::string(left, ' ') + (at(r, c) ? '1' : '0') +
              std::string(col_width[c] - 1 - left, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

BoundaryMatrixZ2 build_boundary_matrix(const FilteredSimplicialComplex& complex, int k,
                                       const std::vector<std::string>& vertex_names) {
  if (k < 0 || k > std::max(complex.dimension(), 0)) {
    throw ParameterError("boundary dimension " + std::to_string(k) + " outside 0.." +
                         std::to_string(complex.dimension()));
  }
  auto lex_cells = [&](int dim) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < complex.size(); ++i) {
      if (complex.dim(i) == dim) ids.push_back(i);
    }
    std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      const auto va = complex.vertices(a);
      const auto vb = complex.vertices(b);
      return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
    });
    return ids;
  };

  BoundaryMatrixZ2 matrix;
  const auto cols = lex_cells(k);
  for (std::size_t c : cols) matrix.col_labels.push_back(simplex_label(complex.vertices(c), vertex_names));
  if (k == 0) {
    matrix.row_labels = {"[0]"};
    matrix.columns.assign(cols.size(), {});
    return matrix;
  }
  const auto rows = lex_cells(k - 1);
  std::vector<std::size_t> row_position(complex.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    row_position[rows[r]] = r;
    matrix.row_labels.push_back(simplex_label(complex.vertices(rows[r]), vertex_names));
  }
  for (std::size_t c : cols) {
    std::vector<std::size_t> entries;
    for (const Simplex& face : boundary_chain(complex.simplex(c))) {
      const auto index = complex.index_of(face);
      if (!index) throw InputError("complex is missing face " + face.to_string());
      entries.push_back(row_position[*index]);
    }
    std::sort(entries.begin(), entries.end());
    matrix.columns.push_back(std::move(entries));
  }
  return matrix;
}

SnfResult snf_rank(const BoundaryMatrixZ2& matrix) {
  BitMatrix bits = to_bits(matrix.columns, matrix.rows());
  const Elimination elim = eliminate(bits);
  SnfResult result;
  result.rank = elim.rank;
  result.pivots = elim.pivots;
  result.normal_form.assign(matrix.rows(), std::vector<std::uint8_t>(matrix.cols(), 0));
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) result.normal_form[r][c] = bits.get(r, c);
  }
  return result;
}

std::size_t z2_rank(const std::vector<std::vector<std::size_t>>& columns, std::size_t rows) {
  BitMatrix bits = to_bits(columns, rows);
  return eliminate(bits).rank;
}

namespace {

BettiVector betti_from_ranks(const std::vector<std::size_t>& cell_counts,
                             const std::vector<std::size_t>& boundary_ranks, int max_dim) {
  // boundary_ranks[k] = rank of d_k; d_0 = 0.
  BettiVector betti(static_cast<std::size_t>(max_dim) + 1, 0);
  for (int k = 0; k <= max_dim; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const std::size_t cells = ku < cell_counts.size() ? cell_counts[ku] : 0;
    const std::size_t rank_k = ku < boundary_ranks.size() ? boundary_ranks[ku] : 0;
    const std::size_t rank_k1 = ku + 1 < boundary_ranks.size() ? boundary_ranks[ku + 1] : 0;
    const std::size_t cycles = cells - rank_k;
    if (rank_k1 > cycles) throw InvariantError("boundary rank exceeds cycle rank");
    betti[ku] = cycles - rank_k1;
  }
  return betti;
}

}  // namespace

BettiVector betti_numbers(const FilteredSimplicialComplex& complex, int max_dim) {
  if (max_dim < 0) throw ParameterError("max_dim must be >= 0");
  const int top = std::min(complex.dimension(), max_dim + 1);
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(top, 0)) + 1, 0);
  std::vector<std::size_t> ranks(counts.size(), 0);
  for (int k = 0; k <= top; ++k) {
    counts[static_cast<std::size_t>(k)] = complex.count_dim(k);
    if (k >= 1) ranks[static_cast<std::size_t>(k)] = snf_rank(build_boundary_matrix(complex, k)).rank;
  }
  if (complex.empty()) counts.assign(1, 0);
  return betti_from_ranks(counts, ranks, max_dim);
}

std::vector<std::vector<std::size_t>> boundary_columns(const Filtration& filtration, int k,
                                                       std::size_t prefix, std::size_t* row_count) {
  std::vector<std::size_t> position(prefix, 0);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < prefix; ++i) {
    if (filtration.dim(i) == k - 1) position[i] = rows++;
  }
  std::vector<std::vector<std::size_t>> columns;
  for (std::size_t i = 0; i < prefix; ++i) {
    if (filtration.dim(i) != k) continue;
    std::vector<std::size_t> col;
    for (CellIndex face : filtration.boundary(i)) col.push_back(position[face]);
    std::sort(col.begin(), col.end());
    columns.push_back(std::move(col));
  }
  if (row_count) *row_count = rows;
  return columns;
}

BettiVector betti_numbers(const Filtration& filtration, int max_dim, double threshold) {
  if (max_dim < 0) throw ParameterError("max_dim must be >= 0");
  const std::size_t prefix = filtration.prefix_size(threshold);
  const auto size = static_cast<std::size_t>(max_dim) + 2;
  std::vector<std::size_t> counts(size, 0);
  std::vector<std::size_t> ranks(size, 0);
  for (std::size_t i = 0; i < prefix; ++i) {
    const auto d = static_cast<std::size_t>(filtration.dim(i));
    if (d < size) ++counts[d];
  }
  for (int k = 1; k <= max_dim + 1; ++k) {
    std::size_t rows = 0;
    const auto columns = boundary_columns(filtration, k, prefix, &rows);
    ranks[static_cast<std::size_t>(k)] = z2_rank(columns, rows);
  }
  return betti_from_ranks(counts, ranks, max_dim);
}

}  // namespace tda
