#include "tda/rips.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

namespace tda {

PointCloud::PointCloud(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.cols() < 1) throw InputError("points need at least one coordinate");
  if (!points_.allFinite()) throw InputError("non-finite coordinate in point cloud");
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols()) throw InputError("distance matrix is not square");
  if (!d_.allFinite()) throw InputError("distance matrix has non-finite entries");
  for (Eigen::Index i = 0; i < d_.rows(); ++i) {
    if (d_(i, i) != 0.0) throw InputError("distance matrix has a non-zero diagonal entry");
    for (Eigen::Index j = i + 1; j < d_.cols(); ++j) {
      if (d_(i, j) != d_(j, i)) {
        throw InputError("distance matrix is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
      if (d_(i, j) < 0.0) throw InputError("distance matrix has a negative entry");
    }
  }
}

double enclosing_radius(const DistanceMatrix& d, ScaleConvention convention) {
  if (d.size() == 0) return 0.0;
  const double radius = d.matrix().rowwise().maxCoeff().minCoeff();
  return edge_value(radius, convention);
}

namespace {

struct Candidate {
  double value;
  std::uint32_t offset;  // into the flat vertex store
  std::uint8_t size;
};

}  // namespace

FilteredSimplicialComplex rips_filtration(const DistanceMatrix& d, int max_dim, double max_scale,
                                          ScaleConvention convention) {
  const auto n = static_cast<std::size_t>(d.size());
  if (max_dim < 0) throw ParameterError("max_dim must be >= 0");
  if (!(max_scale > 0)) throw ParameterError("max_scale must be > 0");
  if (n == 0) throw ParameterError("no points");
  if (static_cast<std::size_t>(max_dim) > n - 1) {
    throw ParameterError("max_dim " + std::to_string(max_dim) + " exceeds number of points - 1");
  }

  Eigen::MatrixXd value(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) value(i, j) = edge_value(d(i, j), convention);
  }

  // Upper neighbours within scale, ascending.
  std::vector<std::vector<Vertex>> upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (value(i, j) <= max_scale) upper[i].push_back(static_cast<Vertex>(j));
    }
  }

  std::vector<Vertex> store;
  std::vector<Candidate> cells;
  for (std::size_t i = 0; i < n; ++i) {
    cells.push_back({0.0, static_cast<std::uint32_t>(store.size()), 1});
    store.push_back(static_cast<Vertex>(i));
  }

  // Depth-first clique expansion; `common` holds the upper neighbours shared
  // by every vertex of the current simplex.
  std::vector<Vertex> current;
  auto expand = [&](auto&& self, const std::vector<Vertex>& common, double current_value) -> void {
    if (static_cast<int>(current.size()) > max_dim) return;
    for (std::size_t c = 0; c < common.size(); ++c) {
      const Vertex v = common[c];
      double cell_value = current_value;
      for (Vertex u : current) cell_value = std::max(cell_value, value(u, v));
      current.push_back(v);
      cells.push_back({cell_value, static_cast<std::uint32_t>(store.size()),
                       static_cast<std::uint8_t>(current.size())});
      store.insert(store.end(), current.begin(), current.end());
      if (static_cast<int>(current.size()) <= max_dim) {
        std::vector<Vertex> next;
        const auto& nbrs = upper[static_cast<std::size_t>(v)];
        std::set_intersection(common.begin() + static_cast<std::ptrdiff_t>(c) + 1, common.end(),
                              nbrs.begin(), nbrs.end(), std::back_inserter(next));
        self(self, next, cell_value);
      }
      current.pop_back();
    }
  };
  if (max_dim >= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      current.assign(1, static_cast<Vertex>(i));
      expand(expand, upper[i], 0.0);
    }
  }

  auto span_of = [&](const Candidate& c) {
    return std::span<const Vertex>(store.data() + c.offset, c.size);
  };
  std::vector<std::uint32_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return canonical_less(cells[a].value, span_of(cells[a]), cells[b].value, span_of(cells[b]));
  });

  // Faces are looked up directly: vertices by id, edges through an n x n
  // table, higher faces through a hash of their vertex list.
  std::vector<CellIndex> vertex_index(n);
  std::vector<CellIndex> edge_index(max_dim >= 2 ? n * n : 0);
  std::unordered_map<std::string, CellIndex> higher_index;
  auto key_of = [](std::span<const Vertex> v) {
    return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(Vertex));
  };

  Filtration filtration(ComplexKind::simplicial);
  filtration.reserve(cells.size(), store.size(), store.size());
  std::vector<CellIndex> faces;
  std::vector<Vertex> face;
  for (std::uint32_t slot : order) {
    const auto v = span_of(cells[slot]);
    const int dim = static_cast<int>(v.size()) - 1;
    faces.clear();
    if (dim == 1) {
      faces = {vertex_index[static_cast<std::size_t>(v[0])],
               vertex_index[static_cast<std::size_t>(v[1])]};
    } else if (dim == 2) {
      const auto e = [&](Vertex a, Vertex b) {
        return edge_index[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
      };
      faces = {e(v[1], v[2]), e(v[0], v[2]), e(v[0], v[1])};
    } else if (dim > 2) {
      for (std::size_t omit = 0; omit < v.size(); ++omit) {
        face.clear();
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (k != omit) face.push_back(v[k]);
        }
        faces.push_back(higher_index.at(key_of(face)));
      }
    }
    const CellIndex index = filtration.push_back(dim, cells[slot].value, faces, v);
    if (dim == 0) {
      vertex_index[static_cast<std::size_t>(v[0])] = index;
    } else if (dim == 1 && !edge_index.empty()) {
      edge_index[static_cast<std::size_t>(v[0]) * n + static_cast<std::size_t>(v[1])] = index;
    }
    if (dim >= 2 && dim < max_dim) higher_index.emplace(key_of(v), index);
  }
  return FilteredSimplicialComplex::from_filtration(std::move(filtration));
}

}  // namespace tda
