#include "tda/datagen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "tda/error.hpp"

namespace tda::datagen {

namespace {

std::mt19937_64 make_rng(Seed seed) { return std::mt19937_64(seed); }

}  // namespace

CubicalGrid diffuse(const CubicalGrid& initial, const DiffusionParams& p) {
  if (initial.rank() != 2) throw ParameterError("diffusion needs a 2D field");
  if (p.steps < 0) throw ParameterError("steps must be >= 0");
  if (!(p.D >= 0.0) || !(p.dt > 0.0) || !(p.dx > 0.0) || !(p.dy > 0.0)) {
    throw ParameterError("diffusion needs D >= 0 and positive dt, dx, dy");
  }
  const double ratio = p.stability_ratio();
  if (ratio > 0.5) {
    std::ostringstream msg;
    msg << "unstable diffusion parameters: D*dt*(1/dx^2 + 1/dy^2) = " << ratio << " > 0.5";
    throw ParameterError(msg.str());
  }
  const auto nx = static_cast<Eigen::Index>(initial.shape()[0]);
  const auto ny = static_cast<Eigen::Index>(initial.shape()[1]);
  // rows = x so the column-major storage matches the grid's x-fastest layout
  Eigen::MatrixXd u = Eigen::Map<const Eigen::MatrixXd>(initial.values().data(), nx, ny);
  Eigen::MatrixXd next(nx, ny);
  const double cx = p.D * p.dt / (p.dx * p.dx);
  const double cy = p.D * p.dt / (p.dy * p.dy);
  for (int s = 0; s < p.steps; ++s) {
    for (Eigen::Index y = 0; y < ny; ++y) {
      for (Eigen::Index x = 0; x < nx; ++x) {
        const double c = u(x, y);
        const double left = x > 0 ? u(x - 1, y) : c;
        const double right = x + 1 < nx ? u(x + 1, y) : c;
        const double down = y > 0 ? u(x, y - 1) : c;
        const double up = y + 1 < ny ? u(x, y + 1) : c;
        next(x, y) = c + cx * (left - 2.0 * c + right) + cy * (down - 2.0 * c + up);
      }
    }
    u.swap(next);
  }
  return CubicalGrid(initial.shape(), Eigen::Map<const Eigen::VectorXd>(u.data(), u.size()));
}

CubicalGrid gen_diffusion_field(const DiffusionParams& p, Seed seed) {
  if (p.n == 0) throw ParameterError("grid side must be >= 1");
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd values(static_cast<Eigen::Index>(p.n * p.n));
  for (auto& v : values) v = uniform(rng);
  return diffuse(CubicalGrid({p.n, p.n}, std::move(values)), p);
}

SeriesPair gen_periodic_pair(std::size_t n_samples, double amplitude, double frequency,
                             const std::optional<Perturbation>& perturbation, double noise_sigma,
                             Seed seed) {
  if (n_samples < 2) throw ParameterError("n_samples must be >= 2");
  if (!(noise_sigma >= 0.0)) throw ParameterError("noise_sigma must be >= 0");
  if (perturbation) {
    const auto& q = *perturbation;
    if (!(q.t_start >= 0.0) || !(q.t_end <= 1.0) || !(q.t_start < q.t_end)) {
      throw ParameterError("invalid perturbation window: need 0 <= t_start < t_end <= 1");
    }
  }
  const auto n = static_cast<Eigen::Index>(n_samples);
  SeriesPair s{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    s.f1[i] = amplitude * std::sin(two_pi * frequency * t);
    s.f2[i] = amplitude * std::cos(two_pi * frequency * t);
    if (perturbation && t >= perturbation->t_start && t < perturbation->t_end) {
      const double m = perturbation->magnitude;
      if (perturbation->kind == PerturbationKind::shift) {
        s.f1[i] += m;
        s.f2[i] += m;
      } else {
        s.f1[i] += m * std::sin(5.0 * two_pi * frequency * t);
        s.f2[i] += m * std::cos(5.0 * two_pi * frequency * t);
      }
    }
  }
  if (noise_sigma > 0.0) {
    auto rng = make_rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (Eigen::Index i = 0; i < n; ++i) {
      s.f1[i] += noise(rng);
      s.f2[i] += noise(rng);
    }
  }
  return s;
}

std::vector<PointCloud> sliding_windows(const SeriesPair& series, std::size_t window_len,
                                        std::size_t stride) {
  const auto len = static_cast<std::size_t>(series.size());
  if (window_len == 0) throw ParameterError("empty windows: window length must be >= 1");
  if (stride == 0) throw ParameterError("stride must be >= 1");
  if (window_len > len) throw ParameterError("window length exceeds series length");
  std::vector<PointCloud> windows;
  for (std::size_t start = 0; start + window_len <= len; start += stride) {
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(window_len), 2);
    pts.col(0) = series.f1.segment(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(window_len));
    pts.col(1) = series.f2.segment(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(window_len));
    windows.emplace_back(std::move(pts));
  }
  return windows;
}

PointCloud sample_annulus(std::size_t n, double radius, double noise, Seed seed) {
  if (n < 3) throw ParameterError("annulus needs n >= 3");
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, 1.0);
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const double a = angle(rng);
    const double r = radius + noise * jitter(rng);
    pts(i, 0) = r * std::cos(a);
    pts(i, 1) = r * std::sin(a);
  }
  return PointCloud(std::move(pts));
}

PointCloud sample_double_annulus(std::size_t n, double radius, double separation, double noise,
                                 Seed seed) {
  if (n < 3) throw ParameterError("double annulus needs n >= 3");
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, 1.0);
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const double centre = (i % 2 == 0 ? -0.5 : 0.5) * separation;
    const double a = angle(rng);
    const double r = radius + noise * jitter(rng);
    pts(i, 0) = centre + r * std::cos(a);
    pts(i, 1) = r * std::sin(a);
  }
  return PointCloud(std::move(pts));
}

PointCloud sample_two_clusters(std::size_t n, double separation, double spread, Seed seed) {
  if (n < 2) throw ParameterError("two clusters need n >= 2");
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    pts(i, 0) = (i % 2 == 0 ? -0.5 : 0.5) * separation + spread * gauss(rng);
    pts(i, 1) = spread * gauss(rng);
  }
  return PointCloud(std::move(pts));
}

KdeGrid kde_grid(const PointCloud& cloud, std::size_t resolution,
                 std::optional<Eigen::Vector2d> bandwidth,
                 std::optional<std::pair<Eigen::Vector2d, Eigen::Vector2d>> bounds) {
  if (cloud.size() < 1) throw ParameterError("kde needs at least one point");
  if (cloud.ambient_dim() != 2) throw ParameterError("kde needs a 2D point cloud");
  if (resolution == 0) throw ParameterError("resolution must be >= 1");
  const Eigen::MatrixXd& pts = cloud.points();
  const auto n = static_cast<double>(pts.rows());
  const Eigen::Vector2d lo = pts.colwise().minCoeff().transpose();
  const Eigen::Vector2d hi = pts.colwise().maxCoeff().transpose();

  Eigen::Vector2d h;
  if (bandwidth) {
    h = *bandwidth;
    if (!(h.minCoeff() > 0.0) || !h.allFinite()) throw ParameterError("bandwidth must be positive");
  } else {
    const Eigen::RowVector2d mean = pts.colwise().mean();
    const Eigen::Vector2d var =
        ((pts.rowwise() - mean).array().square().colwise().sum() / std::max(1.0, n - 1.0)).transpose();
    const Eigen::Vector2d sd = var.cwiseSqrt();
    if (sd.maxCoeff() <= 0.0) {
      // every point identical: nothing to resolve
      KdeGrid out;
      out.grid = CubicalGrid({1, 1}, Eigen::VectorXd::Ones(1));
      out.lower = lo;
      out.cell = Eigen::Vector2d::Ones();
      out.bandwidth = Eigen::Vector2d::Zero();
      return out;
    }
    const double scott = std::pow(n, -1.0 / 6.0);
    h = sd * scott;
    // a flat axis borrows the other axis' bandwidth
    for (int a = 0; a < 2; ++a) {
      if (h[a] <= 0.0) h[a] = h[1 - a];
    }
  }

  Eigen::Vector2d lower, upper;
  if (bounds) {
    lower = bounds->first;
    upper = bounds->second;
    if (!((upper - lower).minCoeff() > 0.0)) throw ParameterError("empty kde bounds");
  } else {
    lower = lo - 4.0 * h;
    upper = hi + 4.0 * h;
  }
  const Eigen::Vector2d cell = (upper - lower) / static_cast<double>(resolution);

  // separable kernel: density(x, y) = mean_i kx_i(x) ky_i(y)
  const auto m = static_cast<Eigen::Index>(resolution);
  Eigen::MatrixXd kx(pts.rows(), m), ky(pts.rows(), m);
  const double norm_x = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * h[0]);
  const double norm_y = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * h[1]);
  for (Eigen::Index c = 0; c < m; ++c) {
    const double x = lower[0] + (static_cast<double>(c) + 0.5) * cell[0];
    const double y = lower[1] + (static_cast<double>(c) + 0.5) * cell[1];
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      const double zx = (x - pts(i, 0)) / h[0];
      const double zy = (y - pts(i, 1)) / h[1];
      kx(i, c) = norm_x * std::exp(-0.5 * zx * zx);
      ky(i, c) = norm_y * std::exp(-0.5 * zy * zy);
    }
  }
  // column-major (x, y) matrix == x-fastest storage
  const Eigen::MatrixXd density = (kx.transpose() * ky) / n;

  KdeGrid out;
  out.grid = CubicalGrid({resolution, resolution},
                         Eigen::Map<const Eigen::VectorXd>(density.data(), density.size()));
  out.lower = lower;
  out.cell = cell;
  out.bandwidth = h;
  return out;
}

CubicalGrid gen_pocket_voxels(std::size_t k, double wall, double pocket) {
  if (k == 0) throw ParameterError("need at least one pocket");
  const std::size_t nz = 2 * k + 1;
  Eigen::VectorXd values = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(9 * nz), wall);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t z = 2 * j + 1;
    values[static_cast<Eigen::Index>(z * 9 + 1 * 3 + 1)] = pocket;
  }
  return CubicalGrid({3, 3, nz}, std::move(values));
}

std::string perturbation_name(PerturbationKind kind) {
  return kind == PerturbationKind::shift ? "shift" : "oscillation";
}

PerturbationKind parse_perturbation(const std::string& name) {
  if (name == "shift") return PerturbationKind::shift;
  if (name == "oscillation") return PerturbationKind::oscillation;
  throw ParameterError("unknown perturbation kind '" + name + "'");
}

}  // namespace tda::datagen
