#include "tda/simplex.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>

#include "tda/error.hpp"

namespace tda {
namespace {

std::string key_of(std::span<const Vertex> vertices) {
  std::string key(vertices.size() * sizeof(Vertex), '\0');
  std::memcpy(key.data(), vertices.data(), key.size());
  return key;
}

}  // namespace

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ParameterError("a simplex needs at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (vertices_.front() < 0) throw ParameterError("vertex ids must be non-negative");
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw ParameterError("duplicate vertex in simplex");
  }
}

std::string Simplex::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < vertices_.size(); ++i) out << (i ? "," : "") << vertices_[i];
  out << ']';
  return out.str();
}

std::vector<Simplex> boundary_chain(const Simplex& s) {
  std::vector<Simplex> faces;
  if (s.dimension() == 0) return faces;
  faces.reserve(s.vertices().size());
  for (std::size_t omit = 0; omit < s.vertices().size(); ++omit) {
    std::vector<Vertex> face;
    face.reserve(s.vertices().size() - 1);
    for (std::size_t i = 0; i < s.vertices().size(); ++i) {
      if (i != omit) face.push_back(s[i]);
    }
    faces.emplace_back(std::move(face));
  }
  return faces;
}

bool canonical_less(double value_a, std::span<const Vertex> a, double value_b,
                    std::span<const Vertex> b) {
  if (value_a != value_b) return value_a < value_b;
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void FilteredSimplicialComplex::append(std::span<const Vertex> vertices, double value) {
  vertices_.insert(vertices_.end(), vertices.begin(), vertices.end());
  offsets_.push_back(vertices_.size());
  values_.push_back(value);
  max_dim_ = std::max(max_dim_, static_cast<int>(vertices.size()) - 1);
}

FilteredSimplicialComplex FilteredSimplicialComplex::from_ordered(
    const std::vector<FilteredSimplex>& cells) {
  FilteredSimplicialComplex complex;
  for (const auto& cell : cells) complex.append(cell.simplex.vertices(), cell.value);
  return complex;
}

FilteredSimplicialComplex FilteredSimplicialComplex::from_cells(std::vector<FilteredSimplex> cells) {
  std::stable_sort(cells.begin(), cells.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
    return canonical_less(a.value, a.simplex.vertices(), b.value, b.simplex.vertices());
  });
  return from_ordered(cells);
}

FilteredSimplicialComplex FilteredSimplicialComplex::from_filtration(Filtration filtration) {
  if (filtration.kind() != ComplexKind::simplicial) {
    throw ParameterError("filtration is not simplicial");
  }
  FilteredSimplicialComplex complex;
  complex.vertices_.reserve(filtration.size() * 2);
  complex.offsets_.reserve(filtration.size() + 1);
  complex.values_.reserve(filtration.size());
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    const auto label = filtration.label(i);
    if (static_cast<int>(label.size()) != filtration.dim(i) + 1) {
      throw InputError("simplicial cell " + std::to_string(i) + " has a malformed vertex list");
    }
    complex.append(label, filtration.value(i));
  }
  std::call_once(complex.cache_->filtration_once, [&] {
    complex.cache_->filtration = std::make_unique<Filtration>(std::move(filtration));
  });
  return complex;
}

Simplex FilteredSimplicialComplex::simplex(std::size_t i) const {
  const auto v = vertices(i);
  return Simplex(std::vector<Vertex>(v.begin(), v.end()));
}

std::size_t FilteredSimplicialComplex::count_dim(int dim) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) count += (this->dim(i) == dim);
  return count;
}

const std::unordered_map<std::string, std::size_t>& FilteredSimplicialComplex::lookup() const {
  std::call_once(cache_->lookup_once, [this] {
    cache_->lookup.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) cache_->lookup.emplace(key_of(vertices(i)), i);
  });
  return cache_->lookup;
}

std::optional<std::size_t> FilteredSimplicialComplex::index_of(std::span<const Vertex> v) const {
  const auto& map = lookup();
  const auto it = map.find(key_of(v));
  if (it == map.end()) return std::nullopt;
  return it->second;
}

const Filtration& FilteredSimplicialComplex::filtration() const {
  std::call_once(cache_->filtration_once, [this] {
    auto built = std::make_unique<Filtration>(ComplexKind::simplicial);
    built->reserve(size(), vertices_.size(), vertices_.size());
    std::vector<CellIndex> faces;
    std::vector<Vertex> face;
    for (std::size_t i = 0; i < size(); ++i) {
      const auto v = vertices(i);
      faces.clear();
      if (v.size() > 1) {
        for (std::size_t omit = 0; omit < v.size(); ++omit) {
          face.clear();
          for (std::size_t k = 0; k < v.size(); ++k) {
            if (k != omit) face.push_back(v[k]);
          }
          const auto index = index_of(face);
          if (!index || *index >= i) {
            cache_->filtration_error = "face of cell " + std::to_string(i) +
                                       (index ? " appears after it" : " is missing");
            return;
          }
          faces.push_back(static_cast<CellIndex>(*index));
        }
      }
      built->push_back(dim(i), values_[i], faces, v);
    }
    cache_->filtration = std::move(built);
  });
  if (!cache_->filtration) throw InputError("invalid complex: " + cache_->filtration_error);
  return *cache_->filtration;
}

FilteredSimplicialComplex FilteredSimplicialComplex::sub_complex(double threshold) const {
  FilteredSimplicialComplex sub;
  for (std::size_t i = 0; i < size(); ++i) {
    if (values_[i] <= threshold) sub.append(vertices(i), values_[i]);
  }
  return sub;
}

std::string to_string(ComplexViolation::Kind kind) {
  switch (kind) {
    case ComplexViolation::Kind::missing_face: return "missing face";
    case ComplexViolation::Kind::value_inversion: return "value inversion";
    case ComplexViolation::Kind::order_break: return "order break";
  }
  return "unknown";
}

std::optional<ComplexViolation> validate_complex(const FilteredSimplicialComplex& complex) {
  using Kind = ComplexViolation::Kind;
  for (std::size_t i = 0; i < complex.size(); ++i) {
    const Simplex cell = complex.simplex(i);
    for (const Simplex& face : boundary_chain(cell)) {
      const auto index = complex.index_of(face);
      if (!index) {
        return ComplexViolation{Kind::missing_face, i, face,
                                "cell " + cell.to_string() + " is missing face " + face.to_string()};
      }
      if (complex.value(*index) > complex.value(i)) {
        return ComplexViolation{Kind::value_inversion, i, face,
                                "face " + face.to_string() + " enters after coface " +
                                    cell.to_string()};
      }
      if (*index > i) {
        return ComplexViolation{Kind::order_break, i, face,
                                "face " + face.to_string() + " is listed after coface " +
                                    cell.to_string()};
      }
    }
    if (i > 0 && !canonical_less(complex.value(i - 1), complex.vertices(i - 1), complex.value(i),
                                 complex.vertices(i))) {
      return ComplexViolation{Kind::order_break, i, std::nullopt,
                              "cell " + cell.to_string() + " breaks (value, dimension, lex) order"};
    }
  }
  return std::nullopt;
}

}  // namespace tda
