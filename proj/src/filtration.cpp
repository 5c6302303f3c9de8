#include "tda/filtration.hpp"

#include <algorithm>
#include <sstream>

#include "tda/error.hpp"

namespace tda {

void Filtration::reserve(std::size_t cells, std::size_t boundary_entries,
                         std::size_t label_entries) {
  dims_.reserve(cells);
  values_.reserve(cells);
  boundary_offsets_.reserve(cells + 1);
  label_offsets_.reserve(cells + 1);
  boundary_.reserve(boundary_entries);
  labels_.reserve(label_entries);
}

CellIndex Filtration::push_back(int dim, double value, std::span<const CellIndex> boundary,
                                std::span<const std::int32_t> label) {
  const auto index = static_cast<CellIndex>(dims_.size());
  if (dim < 0 || dim > 127) throw InvariantError("cell dimension out of range");
  const std::size_t first = boundary_.size();
  for (CellIndex face : boundary) {
    if (face >= index || dims_[face] != dim - 1) {
      throw InvariantError("boundary entry of cell " + std::to_string(index) +
                           " is not an earlier codimension-1 cell");
    }
    boundary_.push_back(face);
  }
  std::sort(boundary_.begin() + static_cast<std::ptrdiff_t>(first), boundary_.end());
  dims_.push_back(static_cast<std::int8_t>(dim));
  values_.push_back(value);
  boundary_offsets_.push_back(boundary_.size());
  labels_.insert(labels_.end(), label.begin(), label.end());
  label_offsets_.push_back(labels_.size());
  max_dim_ = std::max(max_dim_, dim);
  return index;
}

std::size_t Filtration::count_dim(int dim) const {
  return static_cast<std::size_t>(
      std::count(dims_.begin(), dims_.end(), static_cast<std::int8_t>(dim)));
}

std::size_t Filtration::prefix_size(double threshold) const {
  return static_cast<std::size_t>(
      std::upper_bound(values_.begin(), values_.end(), threshold) - values_.begin());
}

Filtration::Coboundary Filtration::coboundary() const {
  Coboundary result;
  result.offsets.assign(size() + 1, 0);
  for (CellIndex face : boundary_) ++result.offsets[face + 1];
  for (std::size_t i = 0; i < size(); ++i) result.offsets[i + 1] += result.offsets[i];
  result.entries.resize(boundary_.size());
  std::vector<std::size_t> cursor(result.offsets.begin(), result.offsets.end() - 1);
  // Cells are visited in increasing order, so each coface list ends up sorted.
  for (std::size_t cell = 0; cell < size(); ++cell) {
    for (CellIndex face : boundary(cell)) {
      result.entries[cursor[face]++] = static_cast<CellIndex>(cell);
    }
  }
  return result;
}

std::string Filtration::describe(std::size_t i) const {
  std::ostringstream out;
  out << (kind_ == ComplexKind::simplicial ? "simplex [" : "cube (");
  const auto lbl = label(i);
  for (std::size_t k = 0; k < lbl.size(); ++k) out << (k ? "," : "") << lbl[k];
  out << (kind_ == ComplexKind::simplicial ? "]" : ")") << " dim " << dim(i) << " at "
      << value(i);
  return out.str();
}

}  // namespace tda
