#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tda/persistence.hpp"

namespace tda {

enum class DistanceMetric { bottleneck, wasserstein };

/// One matched pair; an empty side stands for the diagonal. Indices refer to
/// the `points` vectors of the two input diagrams.
struct MatchEdge {
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  double cost = 0.0;  // L-infinity ground cost, not raised to p
};

struct DiagramDistanceReport {
  DistanceMetric metric = DistanceMetric::bottleneck;
  double p = 1.0;
  int dim = 0;
  double value = 0.0;
  std::vector<MatchEdge> matching;            // finite points
  std::vector<MatchEdge> essential_matching;  // by sorted birth

  std::string to_json() const;
};

/// L-infinity distance between two points, and from a point to the diagonal.
double point_distance(const DiagramPoint& a, const DiagramPoint& b);
double diagonal_distance(const DiagramPoint& a);

/// Exact bottleneck distance in one homology dimension: binary search over
/// candidate costs with a perfect-matching test on the diagonally augmented
/// bipartite graph. Essential points are matched by sorted birth; a count
/// mismatch gives +inf.
DiagramDistanceReport bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                          int dim);

/// Exact p-Wasserstein distance (p >= 1) by optimal assignment on the
/// augmented cost matrix with entries ||x - y||_inf^p.
DiagramDistanceReport wasserstein_distance(const PersistenceDiagram& a,
                                           const PersistenceDiagram& b, int dim, double p);

namespace detail {

/// Minimum-cost perfect assignment on a square cost matrix (row-major).
/// Returns the column assigned to each row.
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n);

/// Maximum bipartite matching size (Hopcroft-Karp) on adjacency lists.
std::size_t max_matching(const std::vector<std::vector<std::size_t>>& adjacency,
                         std::size_t right_count, std::vector<std::size_t>& match_of_left);

}  // namespace detail

}  // namespace tda
