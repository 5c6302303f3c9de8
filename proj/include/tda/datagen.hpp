#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tda/cubical.hpp"
#include "tda/rips.hpp"

namespace tda::datagen {

using Seed = std::uint64_t;

struct DiffusionParams {
  std::size_t n = 32;
  double D = 0.5;
  double dt = 0.2;
  double dx = 1.0;
  double dy = 1.0;
  int steps = 50;

  double stability_ratio() const { return D * dt * (1.0 / (dx * dx) + 1.0 / (dy * dy)); }
};

/// Explicit finite-difference diffusion of a uniform(0,1) random field on an
/// n x n grid with mirror (zero-flux) boundaries.
CubicalGrid gen_diffusion_field(const DiffusionParams& p, Seed seed);

/// Same update applied to a caller-provided initial field.
CubicalGrid diffuse(const CubicalGrid& initial, const DiffusionParams& p);

enum class PerturbationKind { shift, oscillation };

struct Perturbation {
  PerturbationKind kind = PerturbationKind::oscillation;
  double magnitude = 0.5;
  double t_start = 0.0;  // in [0, 1], series time t_i = i / n
  double t_end = 0.0;
};

struct SeriesPair {
  Eigen::VectorXd f1;
  Eigen::VectorXd f2;
  Eigen::Index size() const { return f1.size(); }
};

/// f1 = a sin(2 pi k t), f2 = a cos(2 pi k t) at t_i = i / n. A shift adds
/// `magnitude` to both series inside the window; an oscillation adds a
/// circular wobble of radius `magnitude` at five times the base frequency.
SeriesPair gen_periodic_pair(std::size_t n_samples, double amplitude, double frequency,
                             const std::optional<Perturbation>& perturbation,
                             double noise_sigma, Seed seed);

/// Each window's (f1, f2) samples as one 2D cloud.
std::vector<PointCloud> sliding_windows(const SeriesPair& series, std::size_t window_len,
                                        std::size_t stride);

/// Points at uniform random angles on a circle of `radius` with Gaussian
/// radial jitter.
PointCloud sample_annulus(std::size_t n, double radius, double noise, Seed seed);

/// Two circles of equal radius whose centres are `separation` apart
/// (overlapping when separation < 2 radius); points split evenly.
PointCloud sample_double_annulus(std::size_t n, double radius, double separation, double noise,
                                 Seed seed);

/// Two isotropic Gaussian blobs centred at (+-separation/2, 0).
PointCloud sample_two_clusters(std::size_t n, double separation, double spread, Seed seed);

struct KdeGrid {
  CubicalGrid grid;             // x fastest, values = density at cell centres
  Eigen::Vector2d lower;        // lower-left corner of the grid
  Eigen::Vector2d cell;         // cell side lengths
  Eigen::Vector2d bandwidth;

  double cell_area() const { return cell.prod(); }
};

/// Gaussian kernel density estimate of a 2D cloud over its bounding box
/// padded by four bandwidths. Default bandwidth is Scott's rule,
/// n^(-1/6) times the per-axis standard deviation.
KdeGrid kde_grid(const PointCloud& cloud, std::size_t resolution,
                 std::optional<Eigen::Vector2d> bandwidth = std::nullopt,
                 std::optional<std::pair<Eigen::Vector2d, Eigen::Vector2d>> bounds = std::nullopt);

/// 3 x 3 x (2k + 1) grid: walls at `wall`, k single-voxel pockets at `pocket`
/// stacked along z. Sublevel persistence gives k H2 points (wall, pocket).
CubicalGrid gen_pocket_voxels(std::size_t k, double wall = 0.0, double pocket = 1.0);

std::string perturbation_name(PerturbationKind kind);
PerturbationKind parse_perturbation(const std::string& name);

}  // namespace tda::datagen
