#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tda/filtration.hpp"
#include "tda/homology_z2.hpp"
#include "tda/simplex.hpp"

namespace tda {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct DiagramPoint {
  int dim = 0;
  double birth = 0.0;
  double death = infinity;

  double persistence() const { return death - birth; }
  bool essential() const { return death == infinity; }

  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

struct DiagramMetadata {
  std::string filtration = "rips";          // rips | sublevel | superlevel
  std::string scale_convention = "radius";  // radius | diameter | value
  /// Death value substituted for essential points by vectorization.
  std::optional<double> essential_cap;
};

/// Multiset of (dim, birth, death) points, death possibly +inf.
struct PersistenceDiagram {
  std::vector<DiagramPoint> points;
  DiagramMetadata metadata;

  /// Sorts by (dim, birth, death).
  void sort();
  std::vector<DiagramPoint> in_dim(int dim) const;
  std::size_t size() const { return points.size(); }
};

struct PersistencePair {
  int dim = 0;
  CellIndex birth = 0;
  std::optional<CellIndex> death;
};

/// Cell-level pairing, ordered by birth cell. Every cell of dimension
/// <= max_dim is either a birth here, the death of a lower-dimensional
/// pair, or absent because the reduction did not cover it.
struct PersistencePairing {
  int max_dim = 0;
  std::vector<PersistencePair> pairs;
};

enum class ReductionAlgorithm {
  standard,    // left-to-right column reduction
  twist,       // standard with clearing, dimensions processed top-down
  cohomology,  // coboundary reduction with clearing, bottom-up
};

struct PersistenceOptions {
  ReductionAlgorithm algorithm = ReductionAlgorithm::standard;
  /// Keep birth == death points in the returned diagram.
  bool keep_zero_persistence = false;
};

struct PersistenceResult {
  PersistenceDiagram diagram;
  PersistencePairing pairing;
};

/// Homology in dimensions 0..max_dim over Z2. Cells above max_dim + 1 are
/// ignored; cells of dimension max_dim + 1 only act as deaths.
PersistenceResult compute_persistence(const Filtration& filtration, int max_dim,
                                      const PersistenceOptions& options = {});

/// Validates the complex first; throws InputError naming the violation.
PersistenceResult compute_persistence(const FilteredSimplicialComplex& complex, int max_dim,
                                      const PersistenceOptions& options = {});

DiagramPoint point_of(const Filtration& filtration, const PersistencePair& pair);

/// Counts pairs alive at eps (birth <= eps < death) per dimension. Any eps is
/// allowed here since cubical values may be negative; the simplicial overload
/// requires eps >= 0.
BettiVector diagram_at_scale_betti(const Filtration& filtration, const PersistencePairing& pairing,
                                   double eps, int max_dim);
BettiVector diagram_at_scale_betti(const FilteredSimplicialComplex& complex, double eps, int max_dim);

/// A Z2 cycle given as sorted cell indices of one dimension.
struct RepresentativeCycle {
  int dim = 0;
  std::vector<CellIndex> cells;
  DiagramPoint point;
};

/// Cycle witnessing a diagram point: the reduced death column for paired
/// points of dimension >= 1, the birth cell's reduction chain for essential
/// ones, and the birth vertex for dimension 0. Throws ParameterError when no
/// pair matches the point.
RepresentativeCycle representative_cycle(const Filtration& filtration,
                                         const PersistencePairing& pairing,
                                         const DiagramPoint& point);
/// Same, for one pair of the pairing (distinguishes coincident points).
RepresentativeCycle representative_cycle(const Filtration& filtration, const PersistencePair& pair);

/// Z2 boundary of a chain of cells.
std::vector<CellIndex> chain_boundary(const Filtration& filtration,
                                      const std::vector<CellIndex>& chain);

/// Smallest cycle homologous to `cycle` inside the sub-complex of cells with
/// value <= scale (default: the cycle's birth). Exact over all subsets of the
/// (k+1)-cells there when their count is <= budget, otherwise greedy
/// single-coface flips while they shrink the cycle.
RepresentativeCycle sparsify_cycle(const Filtration& filtration, const RepresentativeCycle& cycle,
                                   int budget = 20, std::optional<double> scale = std::nullopt);

}  // namespace tda
