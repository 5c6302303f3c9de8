#include "tda/persistence.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

#include "tda/error.hpp"

namespace tda {
namespace {

using Column = std::vector<CellIndex>;
constexpr CellIndex kNone = std::numeric_limits<CellIndex>::max();

// column ^= other, both sorted ascending.
void add_into(Column& column, const Column& other, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(column.begin(), column.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  column.swap(scratch);
}

Column boundary_column(const Filtration& f, std::size_t j) {
  const auto b = f.boundary(j);
  return Column(b.begin(), b.end());
}

/// Pairs found by a reduction: partner[i] is the other cell of i's pair.
struct Pairs {
  std::vector<CellIndex> death_of;  // indexed by birth cell
  std::vector<bool> is_death;
};

Pairs reduce_standard(const Filtration& f, int max_dim) {
  const std::size_t n = f.size();
  Pairs out{std::vector<CellIndex>(n, kNone), std::vector<bool>(n, false)};
  std::vector<CellIndex> owner(n, kNone);  // row -> column whose low it is
  std::vector<Column> reduced(n);
  Column scratch;
  for (std::size_t j = 0; j < n; ++j) {
    const int d = f.dim(j);
    if (d < 1 || d > max_dim + 1) continue;
    Column col = boundary_column(f, j);
    while (!col.empty() && owner[col.back()] != kNone) add_into(col, reduced[owner[col.back()]], scratch);
    if (!col.empty()) {
      const CellIndex low = col.back();
      owner[low] = static_cast<CellIndex>(j);
      out.death_of[low] = static_cast<CellIndex>(j);
      out.is_death[j] = true;
      reduced[j] = std::move(col);
    }
  }
  return out;
}

Pairs reduce_twist(const Filtration& f, int max_dim) {
  const std::size_t n = f.size();
  Pairs out{std::vector<CellIndex>(n, kNone), std::vector<bool>(n, false)};
  std::vector<CellIndex> owner(n, kNone);
  std::vector<Column> reduced(n);
  std::vector<bool> cleared(n, false);
  Column scratch;
  for (int d = std::min(max_dim + 1, f.max_dim()); d >= 1; --d) {
    for (std::size_t j = 0; j < n; ++j) {
      if (f.dim(j) != d || cleared[j]) continue;
      Column col = boundary_column(f, j);
      while (!col.empty() && owner[col.back()] != kNone) add_into(col, reduced[owner[col.back()]], scratch);
      if (!col.empty()) {
        const CellIndex low = col.back();
        owner[low] = static_cast<CellIndex>(j);
        out.death_of[low] = static_cast<CellIndex>(j);
        out.is_death[j] = true;
        cleared[low] = true;
        reduced[j] = std::move(col);
      }
    }
  }
  return out;
}

// Reduction of the anti-transposed matrix: columns are coboundaries taken in
// decreasing filtration order, the pivot of a column is its smallest coface.
Pairs reduce_cohomology(const Filtration& f, int max_dim) {
  const std::size_t n = f.size();
  Pairs out{std::vector<CellIndex>(n, kNone), std::vector<bool>(n, false)};
  const auto cob = f.coboundary();
  std::unordered_map<CellIndex, Column> reduced;  // pivot -> reduced column
  std::vector<bool> cleared(n, false);
  Column scratch;
  for (int d = 0; d <= std::min(max_dim, f.max_dim()); ++d) {
    for (std::size_t jj = n; jj-- > 0;) {
      if (f.dim(jj) != d || cleared[jj]) continue;
      const auto cofaces = cob.of(jj);
      Column col(cofaces.begin(), cofaces.end());
      for (;;) {
        if (col.empty()) break;
        const auto it = reduced.find(col.front());
        if (it == reduced.end()) break;
        add_into(col, it->second, scratch);
      }
      if (!col.empty()) {
        const CellIndex pivot = col.front();
        out.death_of[jj] = pivot;
        out.is_death[pivot] = true;
        cleared[pivot] = true;
        reduced.emplace(pivot, std::move(col));
      }
    }
  }
  return out;
}

}  // namespace

void PersistenceDiagram::sort() { std::sort(points.begin(), points.end()); }

std::vector<DiagramPoint> PersistenceDiagram::in_dim(int dim) const {
  std::vector<DiagramPoint> out;
  for (const auto& p : points) {
    if (p.dim == dim) out.push_back(p);
  }
  return out;
}

DiagramPoint point_of(const Filtration& f, const PersistencePair& pair) {
  return {pair.dim, f.value(pair.birth), pair.death ? f.value(*pair.death) : infinity};
}

PersistenceResult compute_persistence(const Filtration& f, int max_dim,
                                      const PersistenceOptions& options) {
  if (max_dim < 0) throw ParameterError("max_dim must be >= 0");
  Pairs pairs;
  switch (options.algorithm) {
    case ReductionAlgorithm::standard: pairs = reduce_standard(f, max_dim); break;
    case ReductionAlgorithm::twist: pairs = reduce_twist(f, max_dim); break;
    case ReductionAlgorithm::cohomology: pairs = reduce_cohomology(f, max_dim); break;
  }

  PersistenceResult result;
  result.pairing.max_dim = max_dim;
  result.diagram.metadata.filtration = f.kind() == ComplexKind::simplicial ? "rips" : "sublevel";
  result.diagram.metadata.scale_convention = f.kind() == ComplexKind::simplicial ? "radius" : "value";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int d = f.dim(i);
    if (d > max_dim || pairs.is_death[i]) continue;
    PersistencePair pair{d, static_cast<CellIndex>(i), std::nullopt};
    if (pairs.death_of[i] != kNone) pair.death = pairs.death_of[i];
    result.pairing.pairs.push_back(pair);
    const DiagramPoint point = point_of(f, pair);
    if (options.keep_zero_persistence || point.death > point.birth) {
      result.diagram.points.push_back(point);
    }
  }
  result.diagram.sort();
  return result;
}

PersistenceResult compute_persistence(const FilteredSimplicialComplex& complex, int max_dim,
                                      const PersistenceOptions& options) {
  if (const auto violation = validate_complex(complex)) {
    throw InputError("invalid complex: " + violation->message);
  }
  return compute_persistence(complex.filtration(), max_dim, options);
}

BettiVector diagram_at_scale_betti(const Filtration& f, const PersistencePairing& pairing,
                                   double eps, int max_dim) {
  BettiVector betti(static_cast<std::size_t>(max_dim) + 1, 0);
  for (const auto& pair : pairing.pairs) {
    if (pair.dim > max_dim) continue;
    const DiagramPoint p = point_of(f, pair);
    if (p.birth <= eps && eps < p.death) ++betti[static_cast<std::size_t>(pair.dim)];
  }
  return betti;
}

BettiVector diagram_at_scale_betti(const FilteredSimplicialComplex& complex, double eps,
                                   int max_dim) {
  if (eps < 0) throw ParameterError("eps must be >= 0");
  const auto result = compute_persistence(complex, max_dim, {.keep_zero_persistence = true});
  return diagram_at_scale_betti(complex.filtration(), result.pairing, eps, max_dim);
}

std::vector<CellIndex> chain_boundary(const Filtration& f, const std::vector<CellIndex>& chain) {
  Column acc;
  Column scratch;
  for (CellIndex c : chain) {
    const Column b = boundary_column(f, c);
    add_into(acc, b, scratch);
  }
  return acc;
}

RepresentativeCycle representative_cycle(const Filtration& f, const PersistencePairing& pairing,
                                         const DiagramPoint& point) {
  for (const auto& pair : pairing.pairs) {
    if (point_of(f, pair) == point) return representative_cycle(f, pair);
  }
  throw ParameterError("diagram point not found in the pairing");
}

RepresentativeCycle representative_cycle(const Filtration& f, const PersistencePair& pair) {
  const PersistencePair* match = &pair;
  if (pair.birth >= f.size() || (pair.death && *pair.death >= f.size())) {
    throw ParameterError("pair refers to cells outside the filtration");
  }
  RepresentativeCycle cycle{match->dim, {}, point_of(f, pair)};
  if (match->dim == 0) {
    cycle.cells = {match->birth};
    return cycle;
  }

  Column scratch;
  if (match->death) {
    // Reduce the (k+1)-columns up to the death cell; its final column is the
    // cycle that becomes a boundary there.
    const CellIndex death = *match->death;
    std::vector<CellIndex> owner(f.size(), kNone);
    std::vector<Column> reduced(f.size());
    for (std::size_t j = 0; j <= death; ++j) {
      if (f.dim(j) != match->dim + 1) continue;
      Column col = boundary_column(f, j);
      while (!col.empty() && owner[col.back()] != kNone) add_into(col, reduced[owner[col.back()]], scratch);
      if (j == death) {
        cycle.cells = std::move(col);
        break;
      }
      if (!col.empty()) {
        owner[col.back()] = static_cast<CellIndex>(j);
        reduced[j] = std::move(col);
      }
    }
  } else {
    // Track the chain V_j with R_j = boundary(V_j); the birth column reduces
    // to zero, so V at the birth cell is a cycle containing it.
    const CellIndex birth = match->birth;
    std::vector<CellIndex> owner(f.size(), kNone);
    std::vector<Column> reduced(f.size());
    std::vector<Column> chains(f.size());
    for (std::size_t j = 0; j <= birth; ++j) {
      if (f.dim(j) != match->dim) continue;
      Column col = boundary_column(f, j);
      Column chain{static_cast<CellIndex>(j)};
      while (!col.empty() && owner[col.back()] != kNone) {
        const CellIndex k = owner[col.back()];
        add_into(col, reduced[k], scratch);
        add_into(chain, chains[k], scratch);
      }
      if (j == birth) {
        if (!col.empty()) throw InvariantError("essential birth column did not reduce to zero");
        cycle.cells = std::move(chain);
        break;
      }
      if (!col.empty()) {
        owner[col.back()] = static_cast<CellIndex>(j);
        reduced[j] = std::move(col);
        chains[j] = std::move(chain);
      }
    }
  }
  if (!chain_boundary(f, cycle.cells).empty()) {
    throw InvariantError("representative chain has a non-empty boundary");
  }
  return cycle;
}

RepresentativeCycle sparsify_cycle(const Filtration& f, const RepresentativeCycle& cycle,
                                   int budget, std::optional<double> scale) {
  if (budget < 0) throw ParameterError("budget must be >= 0");
  const double limit = scale.value_or(cycle.point.birth);
  const std::size_t prefix = f.prefix_size(limit);
  const int k = cycle.dim;

  // Local numbering of the k-cells in the search region.
  std::vector<std::size_t> local(prefix, 0);
  std::size_t k_cells = 0;
  std::vector<std::size_t> cofaces;
  for (std::size_t i = 0; i < prefix; ++i) {
    if (f.dim(i) == k) local[i] = k_cells++;
    if (f.dim(i) == k + 1) cofaces.push_back(i);
  }
  std::vector<std::uint8_t> in_z(k_cells, 0);
  std::size_t weight = 0;
  for (CellIndex c : cycle.cells) {
    if (c >= prefix || f.dim(c) != k) {
      throw ParameterError("cycle leaves the search region at cell " + std::to_string(c));
    }
    in_z[local[c]] ^= 1;
  }
  for (auto bit : in_z) weight += bit;

  std::vector<std::vector<std::size_t>> faces(cofaces.size());
  for (std::size_t c = 0; c < cofaces.size(); ++c) {
    for (CellIndex face : f.boundary(cofaces[c])) faces[c].push_back(local[face]);
  }
  auto flip = [&](std::size_t c) {
    for (std::size_t face : faces[c]) {
      weight = in_z[face] ? weight - 1 : weight + 1;
      in_z[face] ^= 1;
    }
  };

  if (cofaces.size() <= static_cast<std::size_t>(budget) && cofaces.size() < 63) {
    // Gray-code walk over all subsets of cofaces; one flip per step.
    const std::uint64_t subsets = std::uint64_t{1} << cofaces.size();
    std::uint64_t best_code = 0;
    std::size_t best_weight = weight;
    for (std::uint64_t step = 1; step < subsets; ++step) {
      flip(static_cast<std::size_t>(std::countr_zero(step)));
      if (weight < best_weight) {
        best_weight = weight;
        best_code = step ^ (step >> 1);
      }
    }
    // The walk ends at gray(2^m - 1); undo it, then apply the best subset.
    const std::uint64_t last = (subsets - 1) ^ ((subsets - 1) >> 1);
    const std::uint64_t delta = last ^ best_code;
    for (std::size_t c = 0; c < cofaces.size(); ++c) {
      if ((delta >> c) & 1u) flip(c);
    }
  } else {
    for (;;) {
      std::size_t best = cofaces.size();
      long best_change = 0;
      for (std::size_t c = 0; c < cofaces.size(); ++c) {
        long change = 0;
        for (std::size_t face : faces[c]) change += in_z[face] ? -1 : 1;
        if (change < best_change) {
          best_change = change;
          best = c;
        }
      }
      if (best == cofaces.size()) break;
      flip(best);
    }
  }

  RepresentativeCycle out{k, {}, cycle.point};
  for (std::size_t i = 0; i < prefix; ++i) {
    if (f.dim(i) == k && in_z[local[i]]) out.cells.push_back(static_cast<CellIndex>(i));
  }
  return out;
}

}  // namespace tda
