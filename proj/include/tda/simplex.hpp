#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tda/filtration.hpp"

namespace tda {

using Vertex = std::int32_t;

/// An abstract simplex: a strictly increasing list of non-negative vertex ids.
class Simplex {
 public:
  /// Sorts the vertices; rejects an empty list, negative ids and duplicates.
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  std::span<const Vertex> vertices() const { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }

  /// Lexicographic on the vertex lists.
  friend auto operator<=>(const Simplex&, const Simplex&) = default;

  std::string to_string() const;

 private:
  std::vector<Vertex> vertices_;
};

/// The (k-1)-faces of a k-simplex; face i omits vertex i. Empty for vertices.
std::vector<Simplex> boundary_chain(const Simplex& s);

struct FilteredSimplex {
  Simplex simplex;
  double value = 0.0;
};

/// Canonical cell order: (value, dimension, lexicographic vertices).
bool canonical_less(double value_a, std::span<const Vertex> a, double value_b,
                    std::span<const Vertex> b);

/// A list of simplices with filtration values. Construction never validates;
/// `validate_complex` reports whether the list is a well-formed filtration.
class FilteredSimplicialComplex {
 public:
  FilteredSimplicialComplex() = default;

  /// Keeps the given order.
  static FilteredSimplicialComplex from_ordered(const std::vector<FilteredSimplex>& cells);
  /// Sorts the cells into canonical order first.
  static FilteredSimplicialComplex from_cells(std::vector<FilteredSimplex> cells);
  /// Wraps a simplicial filtration whose labels are vertex lists.
  static FilteredSimplicialComplex from_filtration(Filtration filtration);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::span<const Vertex> vertices(std::size_t i) const {
    return {vertices_.data() + offsets_[i], vertices_.data() + offsets_[i + 1]};
  }
  Simplex simplex(std::size_t i) const;
  double value(std::size_t i) const { return values_[i]; }
  int dim(std::size_t i) const { return static_cast<int>(offsets_[i + 1] - offsets_[i]) - 1; }
  /// Highest simplex dimension, -1 when empty.
  int dimension() const { return max_dim_; }
  std::size_t count_dim(int dim) const;

  std::optional<std::size_t> index_of(std::span<const Vertex> vertices) const;
  std::optional<std::size_t> index_of(const Simplex& s) const { return index_of(s.vertices()); }

  /// Face-indexed view used by the persistence engine. Throws InputError
  /// when a face is missing or appears after its coface.
  const Filtration& filtration() const;

  /// Cells with value <= threshold, in the same order.
  FilteredSimplicialComplex sub_complex(double threshold) const;

 private:
  void append(std::span<const Vertex> vertices, double value);
  const std::unordered_map<std::string, std::size_t>& lookup() const;

  std::vector<Vertex> vertices_;
  std::vector<std::size_t> offsets_{0};
  std::vector<double> values_;
  int max_dim_ = -1;

  // Derived views, built on first use; shared between copies.
  struct Cache {
    std::once_flag filtration_once;
    std::unique_ptr<Filtration> filtration;
    std::string filtration_error;
    std::once_flag lookup_once;
    std::unordered_map<std::string, std::size_t> lookup;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct ComplexViolation {
  enum class Kind { missing_face, value_inversion, order_break };
  Kind kind;
  std::size_t cell = 0;                // first offending cell
  std::optional<Simplex> face;         // offending face, when applicable
  std::string message;
};

std::string to_string(ComplexViolation::Kind kind);

/// Checks face closure, monotonicity and canonical ordering; returns the
/// first violation found in cell order.
std::optional<ComplexViolation> validate_complex(const FilteredSimplicialComplex& complex);

}  // namespace tda
