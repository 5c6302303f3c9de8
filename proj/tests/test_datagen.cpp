#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "tda/datagen.hpp"
#include "tda/distance.hpp"
#include "tda/error.hpp"
#include "tda/rips.hpp"

using namespace tda;
using namespace tda::datagen;

namespace {

double variance(const CubicalGrid& g) {
  const double mean = g.values().mean();
  return (g.values().array() - mean).square().mean();
}

PersistenceDiagram rips_h1(const PointCloud& pc, bool keep_zero = false) {
  const auto dm = point_cloud_distances(pc);
  const auto k = rips_filtration(dm, 2, enclosing_radius(dm, ScaleConvention::radius));
  PersistenceOptions o;
  o.algorithm = ReductionAlgorithm::cohomology;
  o.keep_zero_persistence = keep_zero;
  return compute_persistence(k.filtration(), 1, o).diagram;
}

std::vector<double> persistences(const PersistenceDiagram& d, int dim, double cap) {
  std::vector<double> out;
  for (const auto& p : d.points) {
    if (p.dim == dim) out.push_back(p.essential() ? cap - p.birth : p.persistence());
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

TEST_CASE("raw diffusion field is uniform on [0,1)") {
  DiffusionParams p;
  p.steps = 0;
  const auto g = gen_diffusion_field(p, 1);
  CHECK(g.shape() == std::vector<std::size_t>{32, 32});
  CHECK(g.values().minCoeff() >= 0.0);
  CHECK(g.values().maxCoeff() < 1.0);
}

TEST_CASE("diffusion keeps a constant field and conserves the mean") {
  DiffusionParams p;
  p.steps = 100;
  const CubicalGrid flat({8, 8}, Eigen::VectorXd::Constant(64, 0.3));
  CHECK(diffuse(flat, p).values() == flat.values());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DiffusionParams raw = p;
    raw.steps = 0;
    const double before = gen_diffusion_field(raw, seed).values().mean();
    const double after = gen_diffusion_field(p, seed).values().mean();
    CHECK(std::abs(before - after) <= 1e-12);
  }
}

TEST_CASE("unstable diffusion parameters are rejected with the ratio") {
  DiffusionParams p;
  p.D = 2.0;
  p.dt = 0.2;
  try {
    gen_diffusion_field(p, 0);
    FAIL("expected rejection");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("0.8") != std::string::npos);
  }
  p.D = 0.5;
  p.steps = -1;
  CHECK_THROWS_AS(gen_diffusion_field(p, 0), ParameterError);
}

TEST_CASE("property: diffusion dissipates variance, faster for larger D") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DiffusionParams p;
    p.n = 16;
    double prev = 1e9;
    for (int steps : {0, 1, 2, 5, 10, 20, 50}) {
      p.steps = steps;
      const double v = variance(gen_diffusion_field(p, seed));
      CHECK(v <= prev);
      prev = v;
    }
    prev = 1e9;
    for (int i = 1; i <= 9; ++i) {
      DiffusionParams q;
      q.n = 16;
      q.D = 0.1 * i;
      const double v = variance(gen_diffusion_field(q, seed));
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("generators are pure functions of parameters and seed") {
  DiffusionParams p;
  CHECK(gen_diffusion_field(p, 9).values() == gen_diffusion_field(p, 9).values());
  CHECK(gen_diffusion_field(p, 9).values() != gen_diffusion_field(p, 10).values());
  CHECK(sample_annulus(50, 1, 0.1, 3).points() == sample_annulus(50, 1, 0.1, 3).points());
  const auto a = gen_periodic_pair(100, 1, 2, std::nullopt, 0.1, 5);
  const auto b = gen_periodic_pair(100, 1, 2, std::nullopt, 0.1, 5);
  CHECK(a.f1 == b.f1);
  CHECK(a.f2 == b.f2);
}

TEST_CASE("clean periodic pair traces a circle") {
  const double amp = 2.5;
  const auto s = gen_periodic_pair(200, amp, 3, std::nullopt, 0.0, 0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    CHECK(std::abs(s.f1[i] * s.f1[i] / (amp * amp) + s.f2[i] * s.f2[i] / (amp * amp) - 1.0) <= 1e-12);
  }
}

TEST_CASE("perturbation stays inside its window") {
  Perturbation q{PerturbationKind::shift, 0.7, 0.25, 0.5};
  const auto clean = gen_periodic_pair(100, 1, 1, std::nullopt, 0.0, 0);
  const auto pert = gen_periodic_pair(100, 1, 1, q, 0.0, 0);
  for (Eigen::Index i = 0; i < 100; ++i) {
    const bool inside = i >= 25 && i < 50;
    CHECK((pert.f1[i] != clean.f1[i]) == inside);
  }
  CHECK_THROWS_AS(gen_periodic_pair(100, 1, 1, Perturbation{PerturbationKind::shift, 1, 0.5, 0.2}, 0, 0),
                  ParameterError);
  CHECK_THROWS_AS(gen_periodic_pair(100, 1, 1, Perturbation{PerturbationKind::shift, 1, -0.1, 0.2}, 0, 0),
                  ParameterError);
  CHECK_THROWS_AS(gen_periodic_pair(1, 1, 1, std::nullopt, 0, 0), ParameterError);
}

TEST_CASE("sliding windows") {
  const auto s = gen_periodic_pair(100, 1, 1, std::nullopt, 0.0, 0);
  const auto disjoint = sliding_windows(s, 25, 25);
  REQUIRE(disjoint.size() == 4);
  CHECK(disjoint[1].point(0)(0) == s.f1[25]);
  CHECK(sliding_windows(s, 30, 7).size() == (100 - 30) / 7 + 1);
  const auto whole = sliding_windows(s, 100, 1);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].points().col(0) == s.f1);
  CHECK_THROWS_AS(sliding_windows(s, 0, 1), ParameterError);
  CHECK_THROWS_AS(sliding_windows(s, 10, 0), ParameterError);
  CHECK_THROWS_AS(sliding_windows(s, 101, 1), ParameterError);
}

TEST_CASE("each clean window covering a period has one dominant loop") {
  const auto s = gen_periodic_pair(240, 1, 2, std::nullopt, 0.0, 0);
  for (const auto& w : sliding_windows(s, 120, 40)) {
    const auto pers = persistences(rips_h1(w), 1, 0);
    REQUIRE(!pers.empty());
    CHECK(pers[0] > 0.5);
    if (pers.size() > 1) CHECK(pers[1] < 0.1 * pers[0]);
  }
}

TEST_CASE("noisy phase plane keeps its loop") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double sigma = 0.05;
    const auto clean = sliding_windows(gen_periodic_pair(100, 1, 1, std::nullopt, 0.0, seed), 100, 1)[0];
    const auto noisy = sliding_windows(gen_periodic_pair(100, 1, 1, std::nullopt, sigma, seed), 100, 1)[0];
    CHECK(bottleneck_distance(rips_h1(clean), rips_h1(noisy), 1).value <= 3 * sigma);
  }
}

TEST_CASE("single circle: one loop, the rest have no persistence") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto d = rips_h1(sample_annulus(80, 1.0, 0.0, seed));
    const auto h1 = d.in_dim(1);
    REQUIRE(h1.size() == 1);
    CHECK(h1[0].persistence() > 0.5);
  }
}

TEST_CASE("two overlapping circles: at least two large loops") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto pers = persistences(rips_h1(sample_double_annulus(160, 1.0, 1.2, 0.0, seed)), 1, 0);
    REQUIRE(pers.size() >= 2);
    CHECK(pers[1] > 0.2);
  }
}

TEST_CASE("three points on a circle give a loop that fills at once") {
  // the flag rule fills the triangle together with its last edge, so the
  // class has zero persistence and only shows up when kept
  const auto pc = sample_annulus(3, 1.0, 0.0, 1);
  const auto k = rips_filtration(point_cloud_distances(pc), 2);
  CHECK(compute_persistence(k, 1).diagram.in_dim(1).empty());
  PersistenceOptions keep;
  keep.keep_zero_persistence = true;
  const auto h1 = compute_persistence(k, 1, keep).diagram.in_dim(1);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].birth == h1[0].death);
  CHECK_THROWS_AS(sample_annulus(2, 1, 0, 0), ParameterError);
}

TEST_CASE("kde of a single point peaks at the nearest cell") {
  Eigen::MatrixXd p(1, 2);
  p << 0.3, -0.2;
  const auto k = kde_grid(PointCloud(p), 33, Eigen::Vector2d(0.5, 0.5));
  Eigen::Index best;
  k.grid.values().maxCoeff(&best);
  const auto x = static_cast<std::size_t>(best) % 33, y = static_cast<std::size_t>(best) / 33;
  const double cx = k.lower[0] + (x + 0.5) * k.cell[0], cy = k.lower[1] + (y + 0.5) * k.cell[1];
  CHECK(std::abs(cx - 0.3) <= k.cell[0] / 2 + 1e-12);
  CHECK(std::abs(cy + 0.2) <= k.cell[1] / 2 + 1e-12);
  // all identical points with no bandwidth: nothing to resolve
  Eigen::MatrixXd same(3, 2);
  same << 1, 1, 1, 1, 1, 1;
  CHECK(kde_grid(PointCloud(same), 64).grid.size() == 1);
}

TEST_CASE("kde integrates to one") {
  const auto pc = sample_two_clusters(200, 4.0, 0.5, 7);
  const auto k = kde_grid(pc, 128);
  CHECK(std::abs(k.grid.values().sum() * k.cell_area() - 1.0) <= 1e-2);
}

TEST_CASE("two clusters give two prominent superlevel components") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto k = kde_grid(sample_two_clusters(200, 6.0, 0.5, seed), 48);
    const auto d = superlevel_persistence(k.grid, 0);
    // the surviving component is closed off at the top of the filtration
    const auto pers = persistences(d, 0, -k.grid.values().minCoeff());
    REQUIRE(pers.size() >= 2);
    CHECK(std::count_if(pers.begin(), pers.end(), [&](double x) { return x >= 0.5 * pers[0]; }) == 2);
  }
}

TEST_CASE("pocket voxels") {
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto g = gen_pocket_voxels(k);
    CHECK(voxel_persistence(g).in_dim(2).size() == k);
  }
  CHECK_THROWS_AS(gen_pocket_voxels(0), ParameterError);
}
