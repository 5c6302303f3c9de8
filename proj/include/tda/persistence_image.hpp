#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>

#include "tda/persistence.hpp"

namespace tda {

/// Support rectangle in (birth, persistence) coordinates.
struct ImageRange {
  double birth_min = 0.0;
  double birth_max = 1.0;
  double persistence_min = 0.0;
  double persistence_max = 1.0;
};

enum class WeightKind { linear, constant };

/// linear: w(u) = persistence(u) / max_persistence, zero on the diagonal.
/// max_persistence defaults to the largest persistence among the points used.
struct WeightSpec {
  WeightKind kind = WeightKind::linear;
  std::optional<double> max_persistence;
};

struct PersistenceImageParams {
  int dim = 1;
  std::size_t birth_pixels = 20;
  std::size_t persistence_pixels = 20;
  double sigma = 0.1;
  /// Default: bounding box of the transformed points padded by 3 sigma.
  std::optional<ImageRange> range;
  WeightSpec weight;
  /// Essential points use the diagram's essential_cap as death when set;
  /// otherwise, or when false, they are left out.
  bool include_essential = true;
};

using PixelMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// pixels(i, j): birth bin i, persistence bin j; row-major flattening gives
/// the serialized order.
struct PersistenceImage {
  int dim = 1;
  ImageRange range;
  double sigma = 0.1;
  WeightKind weight = WeightKind::linear;
  double weight_scale = 1.0;  // resolved max_persistence (1 for constant)
  PixelMatrix pixels;

  std::string to_json() const;
  static PersistenceImage from_json(const std::string& text);
};

/// Each point contributes w(u) times the mass of an isotropic Gaussian
/// (std sigma) centred at (birth, persistence) over each pixel rectangle,
/// integrated exactly as a product of normal CDF differences.
PersistenceImage persistence_image(const PersistenceDiagram& diagram,
                                   const PersistenceImageParams& params);

std::string weight_name(WeightKind kind);

}  // namespace tda
