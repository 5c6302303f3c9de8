#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "tda/error.hpp"
#include "tda/simplex.hpp"

namespace tda {

/// Points as rows of a dense matrix; all coordinates finite.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(Eigen::MatrixXd points);

  Eigen::Index size() const { return points_.rows(); }
  Eigen::Index ambient_dim() const { return points_.cols(); }
  const Eigen::MatrixXd& points() const { return points_; }
  auto point(Eigen::Index i) const { return points_.row(i); }

 private:
  Eigen::MatrixXd points_;
};

/// Symmetric, non-negative, zero-diagonal matrix of pairwise distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Rejects non-square, asymmetric, negative or non-zero-diagonal input.
  explicit DistanceMatrix(Eigen::MatrixXd d);

  Eigen::Index size() const { return d_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return d_(i, j); }
  const Eigen::MatrixXd& matrix() const { return d_; }

 private:
  Eigen::MatrixXd d_;
};

/// Euclidean distances between the rows of `points`; each pair computed once.
template <typename Derived>
DistanceMatrix point_cloud_distances(const Eigen::MatrixBase<Derived>& points) {
  if (points.rows() < 1) throw ParameterError("no points");
  if (!points.allFinite()) throw InputError("non-finite coordinate in point cloud");
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dist = (points.row(i) - points.row(j)).template cast<double>().norm();
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return DistanceMatrix(std::move(d));
}

inline DistanceMatrix point_cloud_distances(const PointCloud& cloud) {
  return point_cloud_distances(cloud.points());
}

/// radius: edge {i,j} enters at d/2 (balls of radius eps overlap).
/// diameter: edge enters at d.
enum class ScaleConvention { radius, diameter };

inline double edge_value(double distance, ScaleConvention convention) {
  return convention == ScaleConvention::radius ? distance / 2.0 : distance;
}

/// Vietoris-Rips (clique) filtration with simplices up to `max_dim` and
/// values <= max_scale. Cells come out in canonical order.
FilteredSimplicialComplex rips_filtration(const DistanceMatrix& d, int max_dim,
                                          double max_scale = std::numeric_limits<double>::infinity(),
                                          ScaleConvention convention = ScaleConvention::radius);

/// Smallest scale at which some vertex is joined to every other vertex. From
/// there on the Rips complex is a cone, so no positive-persistence pair
/// involves a later cell.
double enclosing_radius(const DistanceMatrix& d, ScaleConvention convention);

}  // namespace tda
