#include "tda/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

#include "tda/error.hpp"

namespace tda {
namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

struct Split {
  std::vector<std::size_t> finite;     // indices into points
  std::vector<std::size_t> essential;  // sorted by birth
};

Split split(const PersistenceDiagram& d, int dim) {
  Split s;
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    if (d.points[i].dim != dim) continue;
    (d.points[i].essential() ? s.essential : s.finite).push_back(i);
  }
  std::stable_sort(s.essential.begin(), s.essential.end(), [&](std::size_t x, std::size_t y) {
    return d.points[x].birth < d.points[y].birth;
  });
  return s;
}

/// Matches essential points in sorted-birth order; false on count mismatch.
bool match_essential(const PersistenceDiagram& a, const Split& sa, const PersistenceDiagram& b,
                     const Split& sb, std::vector<MatchEdge>& out) {
  if (sa.essential.size() != sb.essential.size()) return false;
  for (std::size_t k = 0; k < sa.essential.size(); ++k) {
    const std::size_t i = sa.essential[k];
    const std::size_t j = sb.essential[k];
    out.push_back({i, j, std::abs(a.points[i].birth - b.points[j].birth)});
  }
  return true;
}

std::string number(double v) {
  if (std::isinf(v)) return "\"inf\"";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

}  // namespace

double point_distance(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_distance(const DiagramPoint& a) { return (a.death - a.birth) / 2.0; }

namespace detail {

std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n) {
  // Shortest augmenting paths with potentials; 1-based internally, column 0
  // is a virtual start.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> min_slack(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t r = owner[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double slack = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          way[c] = col0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[owner[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      owner[col0] = owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> assignment(n, 0);
  for (std::size_t c = 1; c <= n; ++c) {
    if (owner[c] != 0) assignment[owner[c] - 1] = c - 1;
  }
  return assignment;
}

std::size_t max_matching(const std::vector<std::vector<std::size_t>>& adjacency,
                         std::size_t right_count, std::vector<std::size_t>& match_of_left) {
  const std::size_t left_count = adjacency.size();
  match_of_left.assign(left_count, kUnmatched);
  std::vector<std::size_t> match_of_right(right_count, kUnmatched);
  std::vector<std::size_t> layer(left_count);
  std::size_t matched = 0;

  auto bfs = [&] {
    std::queue<std::size_t> queue;
    bool found = false;
    for (std::size_t l = 0; l < left_count; ++l) {
      if (match_of_left[l] == kUnmatched) {
        layer[l] = 0;
        queue.push(l);
      } else {
        layer[l] = kUnmatched;
      }
    }
    while (!queue.empty()) {
      const std::size_t l = queue.front();
      queue.pop();
      for (std::size_t r : adjacency[l]) {
        const std::size_t next = match_of_right[r];
        if (next == kUnmatched) {
          found = true;
        } else if (layer[next] == kUnmatched) {
          layer[next] = layer[l] + 1;
          queue.push(next);
        }
      }
    }
    return found;
  };
  // Iterative DFS along the BFS layers.
  std::vector<std::size_t> edge_cursor(left_count);
  auto dfs = [&](std::size_t start) {
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      const std::size_t l = stack.back();
      bool advanced = false;
      while (edge_cursor[l] < adjacency[l].size()) {
        const std::size_t r = adjacency[l][edge_cursor[l]];
        const std::size_t next = match_of_right[r];
        if (next == kUnmatched) {
          // Augment along the stack.
          for (std::size_t k = stack.size(); k-- > 0;) {
            const std::size_t left = stack[k];
            const std::size_t right = adjacency[left][edge_cursor[left]];
            match_of_left[left] = right;
            match_of_right[right] = left;
          }
          return true;
        }
        if (layer[next] == layer[l] + 1) {
          stack.push_back(next);
          advanced = true;
          break;
        }
        ++edge_cursor[l];
      }
      if (!advanced) {
        layer[l] = kUnmatched;
        stack.pop_back();
        if (!stack.empty()) ++edge_cursor[stack.back()];
      }
    }
    return false;
  };
  while (bfs()) {
    std::fill(edge_cursor.begin(), edge_cursor.end(), 0);
    for (std::size_t l = 0; l < left_count; ++l) {
      if (match_of_left[l] == kUnmatched && dfs(l)) ++matched;
    }
  }
  return matched;
}

}  // namespace detail

namespace {

// Augmented problem: left = A finite (m) then diagonal copies (n);
// right = B finite (n) then diagonal copies (m).
struct Augmented {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<DiagramPoint> a;
  std::vector<DiagramPoint> b;

  std::size_t size() const { return m + n; }
  // Cost of left l to right r; +inf when the edge is not allowed.
  double cost(std::size_t l, std::size_t r) const {
    if (l < m && r < n) return point_distance(a[l], b[r]);
    if (l < m) return r - n == l ? diagonal_distance(a[l]) : infinity;
    if (r < n) return l - m == r ? diagonal_distance(b[r]) : infinity;
    return 0.0;
  }
};

Augmented augment(const PersistenceDiagram& da, const Split& sa, const PersistenceDiagram& db,
                  const Split& sb) {
  Augmented g;
  g.m = sa.finite.size();
  g.n = sb.finite.size();
  for (std::size_t i : sa.finite) g.a.push_back(da.points[i]);
  for (std::size_t j : sb.finite) g.b.push_back(db.points[j]);
  return g;
}

std::vector<MatchEdge> edges_of(const Augmented& g, const std::vector<std::size_t>& right_of_left,
                                const Split& sa, const Split& sb) {
  std::vector<MatchEdge> edges;
  for (std::size_t l = 0; l < g.size(); ++l) {
    const std::size_t r = right_of_left[l];
    if (l >= g.m && r >= g.n) continue;  // diagonal to diagonal
    MatchEdge e;
    if (l < g.m) e.left = sa.finite[l];
    if (r < g.n) e.right = sb.finite[r];
    e.cost = g.cost(l, r);
    edges.push_back(e);
  }
  return edges;
}

}  // namespace

DiagramDistanceReport bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                          int dim) {
  DiagramDistanceReport report;
  report.metric = DistanceMetric::bottleneck;
  report.p = infinity;
  report.dim = dim;
  const Split sa = split(a, dim);
  const Split sb = split(b, dim);
  const Augmented g = augment(a, sa, b, sb);

  double finite_value = 0.0;
  if (g.size() > 0) {
    std::vector<double> candidates{0.0};
    for (std::size_t i = 0; i < g.m; ++i) {
      candidates.push_back(diagonal_distance(g.a[i]));
      for (std::size_t j = 0; j < g.n; ++j) candidates.push_back(point_distance(g.a[i], g.b[j]));
    }
    for (std::size_t j = 0; j < g.n; ++j) candidates.push_back(diagonal_distance(g.b[j]));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto feasible = [&](double t, std::vector<std::size_t>& match) {
      std::vector<std::vector<std::size_t>> adjacency(g.size());
      for (std::size_t l = 0; l < g.size(); ++l) {
        if (l < g.m) {
          for (std::size_t r = 0; r < g.n; ++r) {
            if (g.cost(l, r) <= t) adjacency[l].push_back(r);
          }
          if (g.cost(l, g.n + l) <= t) adjacency[l].push_back(g.n + l);
        } else {
          const std::size_t j = l - g.m;
          if (g.cost(l, j) <= t) adjacency[l].push_back(j);
          for (std::size_t r = g.n; r < g.size(); ++r) adjacency[l].push_back(r);
        }
      }
      return detail::max_matching(adjacency, g.size(), match) == g.size();
    };

    // The largest candidate always admits a perfect matching (every point to
    // its own diagonal copy).
    std::size_t lo = 0;
    std::size_t hi = candidates.size() - 1;
    std::vector<std::size_t> match;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (feasible(candidates[mid], match)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (!feasible(candidates[lo], match)) throw InvariantError("bottleneck search found no matching");
    report.matching = edges_of(g, match, sa, sb);
    for (const auto& e : report.matching) finite_value = std::max(finite_value, e.cost);
  }

  if (!match_essential(a, sa, b, sb, report.essential_matching)) {
    report.value = infinity;
    return report;
  }
  report.value = finite_value;
  for (const auto& e : report.essential_matching) report.value = std::max(report.value, e.cost);
  return report;
}

DiagramDistanceReport wasserstein_distance(const PersistenceDiagram& a,
                                           const PersistenceDiagram& b, int dim, double p) {
  if (!(p >= 1.0)) throw ParameterError("Wasserstein order p must be >= 1");
  DiagramDistanceReport report;
  report.metric = DistanceMetric::wasserstein;
  report.p = p;
  report.dim = dim;
  const Split sa = split(a, dim);
  const Split sb = split(b, dim);
  const Augmented g = augment(a, sa, b, sb);

  // Per-edge costs summed in sorted order, so swapping the arguments gives
  // the same value to the last bit.
  std::vector<double> terms;
  if (g.size() > 0) {
    const std::size_t n = g.size();
    // Diagonal slots are interchangeable, so every left point may use any
    // diagonal copy at its own diagonal cost.
    std::vector<double> cost(n * n, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t r = 0; r < n; ++r) {
        double c = 0.0;
        if (l < g.m && r < g.n) {
          c = point_distance(g.a[l], g.b[r]);
        } else if (l < g.m) {
          c = diagonal_distance(g.a[l]);
        } else if (r < g.n) {
          c = diagonal_distance(g.b[r]);
        }
        cost[l * n + r] = std::pow(c, p);
      }
    }
    const auto assignment = detail::solve_assignment(cost, n);
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t r = assignment[l];
      if (l >= g.m && r >= g.n) continue;
      MatchEdge e;
      if (l < g.m) e.left = sa.finite[l];
      if (r < g.n) e.right = sb.finite[r];
      e.cost = l < g.m && r < g.n ? point_distance(g.a[l], g.b[r])
               : l < g.m          ? diagonal_distance(g.a[l])
                                  : diagonal_distance(g.b[r]);
      terms.push_back(std::pow(e.cost, p));
      report.matching.push_back(e);
    }
  }

  if (!match_essential(a, sa, b, sb, report.essential_matching)) {
    report.value = infinity;
    return report;
  }
  for (const auto& e : report.essential_matching) terms.push_back(std::pow(e.cost, p));
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  report.value = std::pow(total, 1.0 / p);
  return report;
}

std::string DiagramDistanceReport::to_json() const {
  auto side = [](const std::optional<std::size_t>& i) {
    return i ? std::to_string(*i) : std::string("\"diagonal\"");
  };
  std::string out = "{\"metric\":\"";
  out += metric == DistanceMetric::bottleneck ? "bottleneck" : "wasserstein";
  out += "\",\"p\":" + number(p) + ",\"dim\":" + std::to_string(dim) + ",\"value\":" + number(value);
  out += ",\"matching\":[";
  for (std::size_t k = 0; k < matching.size(); ++k) {
    if (k) out += ',';
    out += "[" + side(matching[k].left) + "," + side(matching[k].right) + "," +
           number(matching[k].cost) + "]";
  }
  out += "],\"essential_matching\":[";
  for (std::size_t k = 0; k < essential_matching.size(); ++k) {
    if (k) out += ',';
    out += "[" + side(essential_matching[k].left) + "," + side(essential_matching[k].right) + "," +
           number(essential_matching[k].cost) + "]";
  }
  out += "]}\n";
  return out;
}

}  // namespace tda
