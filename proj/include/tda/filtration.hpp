#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tda {

using CellIndex = std::uint32_t;

enum class ComplexKind { simplicial, cubical };

/// A filtered cell complex in filtration order, the common input of the
/// persistence engine and the Z2 homology oracle.
///
/// Each cell carries its dimension, filtration value, the sorted indices of
/// its codimension-1 faces (all smaller than its own index) and an integer
/// label: vertex ids for simplices, lattice coordinates for cubes.
class Filtration {
 public:
  Filtration() = default;
  explicit Filtration(ComplexKind kind) : kind_(kind) {}

  void reserve(std::size_t cells, std::size_t boundary_entries, std::size_t label_entries);

  /// Appends a cell. `boundary` need not be sorted; every entry must refer to
  /// an earlier cell of dimension `dim - 1`.
  CellIndex push_back(int dim, double value, std::span<const CellIndex> boundary,
                      std::span<const std::int32_t> label = {});

  std::size_t size() const { return dims_.size(); }
  bool empty() const { return dims_.empty(); }
  ComplexKind kind() const { return kind_; }

  int dim(std::size_t i) const { return dims_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  std::span<const CellIndex> boundary(std::size_t i) const {
    return {boundary_.data() + boundary_offsets_[i], boundary_.data() + boundary_offsets_[i + 1]};
  }
  std::span<const std::int32_t> label(std::size_t i) const {
    return {labels_.data() + label_offsets_[i], labels_.data() + label_offsets_[i + 1]};
  }

  /// Highest cell dimension, or -1 when empty.
  int max_dim() const { return max_dim_; }
  std::size_t count_dim(int dim) const;

  /// Number of leading cells with value <= threshold (cells are in
  /// non-decreasing value order).
  std::size_t prefix_size(double threshold) const;

  /// Coboundary lists in CSR form: cofaces of cell i are
  /// `entries[offsets[i] .. offsets[i+1])`, sorted ascending.
  struct Coboundary {
    std::vector<std::size_t> offsets;
    std::vector<CellIndex> entries;
    std::span<const CellIndex> of(std::size_t i) const {
      return {entries.data() + offsets[i], entries.data() + offsets[i + 1]};
    }
  };
  Coboundary coboundary() const;

  std::string describe(std::size_t i) const;

 private:
  ComplexKind kind_ = ComplexKind::simplicial;
  std::vector<std::int8_t> dims_;
  std::vector<double> values_;
  std::vector<std::size_t> boundary_offsets_{0};
  std::vector<CellIndex> boundary_;
  std::vector<std::size_t> label_offsets_{0};
  std::vector<std::int32_t> labels_;
  int max_dim_ = -1;
};

}  // namespace tda
