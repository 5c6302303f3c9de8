#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tda/cubical.hpp"
#include "tda/datagen.hpp"
#include "tda/distance.hpp"
#include "tda/error.hpp"
#include "tda/io.hpp"
#include "tda/persistence.hpp"
#include "tda/persistence_image.hpp"
#include "tda/rips.hpp"
#include "tda/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tda;

namespace {

enum ExitCode { ok = 0, input_error = 2, parameter_error = 3, invariant_error = 4 };

// Everything a run needs to be replayed: the argument list it was started
// with and the parameters after defaults were resolved.
struct Run {
  std::vector<std::string> args;
  json params = json::object();
  std::vector<std::string> outputs;
  fs::path manifest;
};

std::istringstream open_input(const std::string& path) {
  return std::istringstream(io::read_file(path));
}

void write_output(Run& run, const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  io::write_file(path, contents);
  run.outputs.push_back(path.generic_string());
}

void write_manifest(const Run& run) {
  json m;
  m["tool"] = "tda";
  m["format"] = 1;
  m["args"] = run.args;
  m["params"] = run.params;
  m["outputs"] = run.outputs;
  io::write_file(run.manifest, m.dump(2) + "\n");
}

fs::path manifest_next_to(const fs::path& output) {
  return fs::path(output.generic_string() + ".manifest.json");
}

std::string diagram_csv(const PersistenceDiagram& d) {
  std::ostringstream out;
  io::write_diagram(out, d);
  return out.str();
}

ReductionAlgorithm parse_algorithm(const std::string& s) {
  if (s == "standard") return ReductionAlgorithm::standard;
  if (s == "twist") return ReductionAlgorithm::twist;
  if (s == "cohomology") return ReductionAlgorithm::cohomology;
  throw ParameterError("unknown algorithm '" + s + "'");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PH_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParameterError(std::string("PH_SEED is not an unsigned integer: '") + env + "'");
  }
  return 0;
}

// Diagram of a point cloud; without max_scale the filtration stops at the
// enclosing radius, beyond which nothing with positive persistence happens.
struct RipsOutput {
  PersistenceDiagram diagram;
  FilteredSimplicialComplex complex;
};

RipsOutput rips_pipeline(const DistanceMatrix& dm, int max_dim, std::optional<double> max_scale,
                         ScaleConvention convention, ReductionAlgorithm algorithm, bool keep_zero) {
  const double scale = max_scale ? *max_scale : enclosing_radius(dm, convention);
  const auto n = static_cast<int>(dm.size());
  const int build_dim = std::min(max_dim + 1, n - 1);
  RipsOutput out;
  // a single point (or all points coincident) has enclosing radius 0
  out.complex = rips_filtration(dm, build_dim, scale > 0 ? scale : std::numeric_limits<double>::min(),
                                convention);
  PersistenceOptions options;
  options.algorithm = algorithm;
  options.keep_zero_persistence = keep_zero;
  out.diagram = compute_persistence(out.complex.filtration(), max_dim, options).diagram;
  out.diagram.metadata.scale_convention = convention == ScaleConvention::radius ? "radius" : "diameter";
  return out;
}

std::string complex_text(const Filtration& f) {
  std::ostringstream out;
  io::write_complex(out, f);
  return out.str();
}

// ---------------------------------------------------------------- rips

struct RipsArgs {
  std::string input, output, svg, cache, convention = "radius", algorithm = "cohomology";
  int max_dim = -1;
  std::optional<double> max_scale;
  bool distance_matrix = false, keep_zero = false;
};

void run_rips(Run& run, const RipsArgs& a) {
  auto in = open_input(a.input);
  DistanceMatrix dm;
  int default_dim = 1;
  if (a.distance_matrix) {
    dm = io::read_distance_matrix(in);
  } else {
    const auto pc = io::read_point_cloud(in);
    default_dim = pc.ambient_dim() >= 3 ? 2 : 1;
    dm = point_cloud_distances(pc);
  }
  const int max_dim = a.max_dim >= 0 ? a.max_dim : default_dim;
  if (a.convention != "radius" && a.convention != "diameter") {
    throw ParameterError("convention must be radius or diameter");
  }
  const auto convention = a.convention == "radius" ? ScaleConvention::radius : ScaleConvention::diameter;
  const auto result = rips_pipeline(dm, max_dim, a.max_scale, convention, parse_algorithm(a.algorithm), a.keep_zero);

  run.params = {{"input", a.input},
                {"distance_matrix", a.distance_matrix},
                {"max_dim", max_dim},
                {"max_scale", a.max_scale ? json(*a.max_scale) : json("enclosing_radius")},
                {"convention", a.convention},
                {"algorithm", a.algorithm},
                {"keep_zero", a.keep_zero}};
  write_output(run, a.output, diagram_csv(result.diagram));
  if (!a.svg.empty()) write_output(run, a.svg, diagram_svg(result.diagram, fs::path(a.input).filename().string()));
  if (!a.cache.empty()) write_output(run, a.cache, complex_text(result.complex.filtration()));
  run.manifest = manifest_next_to(a.output);
}

// ---------------------------------------------------------------- image / voxel

struct GridArgs {
  std::string input, output, svg, cache, algorithm = "cohomology";
  bool superlevel = false;
  int max_dim = -1;
};

void run_grid(Run& run, const GridArgs& a, bool voxel) {
  auto in = open_input(a.input);
  CubicalGrid grid = voxel ? io::read_voxels(in) : io::read_grid(in, true);
  if (voxel && grid.rank() != 3) throw InputError("voxel input must be 3D");
  PersistenceOptions options;
  options.algorithm = parse_algorithm(a.algorithm);
  const int max_dim = a.max_dim >= 0 ? a.max_dim : grid.rank() - 1;
  if (max_dim > grid.rank() - 1) throw ParameterError("max_dim exceeds grid rank - 1");
  const auto diagram = a.superlevel ? superlevel_persistence(grid, max_dim, options)
                                    : image_persistence(grid, max_dim, options);
  std::vector<std::size_t> shape = grid.shape();
  run.params = {{"input", a.input},
                {"shape", shape},
                {"filtration", a.superlevel ? "superlevel" : "sublevel"},
                {"max_dim", max_dim},
                {"algorithm", a.algorithm},
                {"essential_cap", *diagram.metadata.essential_cap}};
  write_output(run, a.output, diagram_csv(diagram));
  if (!a.svg.empty()) write_output(run, a.svg, diagram_svg(diagram, fs::path(a.input).filename().string()));
  if (!a.cache.empty()) {
    const auto fc = build_cubical_filtration(a.superlevel ? grid.negated() : grid);
    write_output(run, a.cache, complex_text(fc.filtration));
  }
  run.manifest = manifest_next_to(a.output);
}

// ---------------------------------------------------------------- vectorize

struct VectorizeArgs {
  std::vector<std::string> inputs;
  std::string output, weight = "linear";
  int dim = 1;
  std::size_t birth_pixels = 20, persistence_pixels = 20;
  double sigma = 0.1;
  std::vector<double> range;
  std::optional<double> max_persistence, essential_cap;
  bool shared_range = false, no_essential = false;
};

void run_vectorize(Run& run, const VectorizeArgs& a) {
  std::vector<PersistenceDiagram> diagrams;
  for (const auto& path : a.inputs) {
    auto in = open_input(path);
    diagrams.push_back(io::read_diagram(in));
    diagrams.back().metadata.essential_cap = a.essential_cap;
  }
  PersistenceImageParams p;
  p.dim = a.dim;
  p.birth_pixels = a.birth_pixels;
  p.persistence_pixels = a.persistence_pixels;
  p.sigma = a.sigma;
  p.include_essential = !a.no_essential;
  if (a.weight == "linear") {
    p.weight.kind = WeightKind::linear;
  } else if (a.weight == "constant") {
    p.weight.kind = WeightKind::constant;
  } else {
    throw ParameterError("weight must be linear or constant");
  }
  p.weight.max_persistence = a.max_persistence;
  if (!a.range.empty()) {
    if (a.range.size() != 4) throw ParameterError("range needs four numbers: birth_min,birth_max,pers_min,pers_max");
    p.range = ImageRange{a.range[0], a.range[1], a.range[2], a.range[3]};
  }
  if (a.shared_range && diagrams.size() > 1) {
    // one rectangle and one weight scale for the whole corpus
    PersistenceDiagram all;
    all.metadata.essential_cap = a.essential_cap;
    for (const auto& d : diagrams) all.points.insert(all.points.end(), d.points.begin(), d.points.end());
    const auto joint = persistence_image(all, p);
    p.range = joint.range;
    p.weight.max_persistence = joint.weight_scale;
  }
  std::string text;
  if (diagrams.size() == 1) {
    text = persistence_image(diagrams[0], p).to_json() + "\n";
  } else {
    text = "[";
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
      text += (i ? ",\n" : "") + persistence_image(diagrams[i], p).to_json();
    }
    text += "]\n";
  }
  run.params = {{"inputs", a.inputs},
                {"dim", a.dim},
                {"resolution", {a.birth_pixels, a.persistence_pixels}},
                {"sigma", a.sigma},
                {"weight", a.weight},
                {"max_persistence", a.max_persistence ? json(*a.max_persistence) : json(nullptr)},
                {"range", p.range ? json({p.range->birth_min, p.range->birth_max, p.range->persistence_min,
                                          p.range->persistence_max})
                                  : json(nullptr)},
                {"shared_range", a.shared_range},
                {"essential_cap", a.essential_cap ? json(*a.essential_cap) : json(nullptr)},
                {"include_essential", !a.no_essential}};
  write_output(run, a.output, text);
  run.manifest = manifest_next_to(a.output);
}

// ---------------------------------------------------------------- distance

struct DistanceArgs {
  std::string first, second, output, metric = "bottleneck";
  double p = 1.0;
  int dim = 1;
};

void run_distance(Run& run, const DistanceArgs& a) {
  auto in1 = open_input(a.first);
  auto in2 = open_input(a.second);
  const auto d1 = io::read_diagram(in1);
  const auto d2 = io::read_diagram(in2);
  DiagramDistanceReport report;
  if (a.metric == "bottleneck") {
    report = bottleneck_distance(d1, d2, a.dim);
  } else if (a.metric == "wasserstein") {
    report = wasserstein_distance(d1, d2, a.dim, a.p);
  } else {
    throw ParameterError("metric must be bottleneck or wasserstein");
  }
  run.params = {{"inputs", {a.first, a.second}}, {"metric", a.metric}, {"p", a.p}, {"dim", a.dim}};
  write_output(run, a.output, report.to_json() + "\n");
  run.manifest = manifest_next_to(a.output);
}

// ---------------------------------------------------------------- series

struct SeriesArgs {
  std::string input, output_dir;
  std::size_t window = 0, stride = 0;
  bool svg = false;
};

void run_series(Run& run, const SeriesArgs& a) {
  auto in = open_input(a.input);
  const auto pc = io::read_point_cloud(in);
  if (pc.ambient_dim() != 2) throw InputError("series input needs exactly two columns");
  datagen::SeriesPair series{pc.points().col(0), pc.points().col(1)};
  const std::size_t stride = a.stride ? a.stride : a.window;
  const auto windows = datagen::sliding_windows(series, a.window, stride);
  const fs::path dir(a.output_dir);
  std::vector<PersistenceDiagram> diagrams;
  std::string scores = "window,score\n";
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const auto dm = point_cloud_distances(windows[w]);
    diagrams.push_back(
        rips_pipeline(dm, 1, std::nullopt, ScaleConvention::radius, ReductionAlgorithm::cohomology, false).diagram);
    char name[32];
    std::snprintf(name, sizeof name, "window_%03zu", w);
    write_output(run, dir / (std::string(name) + ".csv"), diagram_csv(diagrams.back()));
    if (a.svg) write_output(run, dir / (std::string(name) + ".svg"), diagram_svg(diagrams.back(), name));
    const double score = bottleneck_distance(diagrams[w], diagrams[0], 1).value;
    scores += std::to_string(w) + "," + io::format_number(score) + "\n";
  }
  write_output(run, dir / "score.csv", scores);
  run.params = {{"input", a.input}, {"window", a.window}, {"stride", stride}, {"windows", windows.size()},
                {"score", "bottleneck distance of each window's H1 diagram to window 0"}};
  run.manifest = dir / "manifest.json";
}

// ---------------------------------------------------------------- sparsify

struct SparsifyArgs {
  std::string diagram, cache, output;
  std::size_t point = 0;
  int budget = 20;
  std::optional<double> scale;
};

json cells_json(const Filtration& f, const std::vector<CellIndex>& cells) {
  json out = json::array();
  for (auto c : cells) {
    const auto l = f.label(c);
    out.push_back({{"index", c}, {"value", f.value(c)}, {"label", std::vector<std::int32_t>(l.begin(), l.end())}});
  }
  return out;
}

void run_sparsify(Run& run, const SparsifyArgs& a) {
  auto din = open_input(a.diagram);
  auto diagram = io::read_diagram(din);
  diagram.sort();
  if (a.point >= diagram.size()) {
    throw ParameterError("point index " + std::to_string(a.point) + " out of range (diagram has " +
                         std::to_string(diagram.size()) + " rows)");
  }
  const DiagramPoint target = diagram.points[a.point];
  if (target.dim < 1) throw ParameterError("sparsify needs a point of dimension >= 1");
  auto cin = open_input(a.cache);
  const Filtration f = io::read_complex(cin);
  PersistenceOptions options;
  options.keep_zero_persistence = true;
  // superlevel caches store the negated grid, and so does the diagram
  const auto result = compute_persistence(f, target.dim, options);
  const auto cycle = representative_cycle(f, result.pairing, target);
  const auto sparse = sparsify_cycle(f, cycle, a.budget, a.scale);
  const json out = {{"dim", target.dim},
                    {"birth", target.birth},
                    {"death", target.essential() ? json("inf") : json(target.death)},
                    {"budget", a.budget},
                    {"size_before", cycle.cells.size()},
                    {"size_after", sparse.cells.size()},
                    {"representative", cells_json(f, cycle.cells)},
                    {"sparse", cells_json(f, sparse.cells)}};
  run.params = {{"diagram", a.diagram}, {"cache", a.cache}, {"point", a.point}, {"budget", a.budget},
                {"scale", a.scale ? json(*a.scale) : json("birth")}};
  write_output(run, a.output, out.dump(2) + "\n");
  run.manifest = manifest_next_to(a.output);
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind, output, input, perturb, pgm;
  std::optional<std::uint64_t> seed;
  std::size_t n = 200, samples = 400, grid = 32, resolution = 64, pockets = 1;
  double radius = 1.0, separation = 1.2, noise = 0.0, spread = 0.5;
  double amplitude = 1.0, frequency = 4.0, magnitude = 0.5, t_start = 0.5, t_end = 0.75;
  double D = 0.5, dt = 0.2, dx = 1.0, dy = 1.0;
  int steps = 50;
  std::optional<double> bandwidth;
};

std::string grid_text(const CubicalGrid& g) {
  std::ostringstream out;
  io::write_voxels(out, g);
  return out.str();
}

void run_gen(Run& run, GenArgs a) {
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  run.params = {{"kind", a.kind}, {"seed", seed}};
  auto& p = run.params;
  std::string text;
  if (a.kind == "annulus" || a.kind == "double-annulus" || a.kind == "clusters") {
    PointCloud pc;
    if (a.kind == "annulus") {
      pc = datagen::sample_annulus(a.n, a.radius, a.noise, seed);
      p.update({{"n", a.n}, {"radius", a.radius}, {"noise", a.noise}});
    } else if (a.kind == "double-annulus") {
      pc = datagen::sample_double_annulus(a.n, a.radius, a.separation, a.noise, seed);
      p.update({{"n", a.n}, {"radius", a.radius}, {"separation", a.separation}, {"noise", a.noise}});
    } else {
      pc = datagen::sample_two_clusters(a.n, a.separation, a.spread, seed);
      p.update({{"n", a.n}, {"separation", a.separation}, {"spread", a.spread}});
    }
    std::ostringstream out;
    io::write_point_cloud(out, pc.points());
    text = out.str();
  } else if (a.kind == "series") {
    std::optional<datagen::Perturbation> q;
    if (!a.perturb.empty() && a.perturb != "none") {
      q = datagen::Perturbation{datagen::parse_perturbation(a.perturb), a.magnitude, a.t_start, a.t_end};
    }
    const auto s = datagen::gen_periodic_pair(a.samples, a.amplitude, a.frequency, q, a.noise, seed);
    Eigen::MatrixXd m(s.size(), 2);
    m << s.f1, s.f2;
    std::ostringstream out;
    io::write_point_cloud(out, m);
    text = out.str();
    p.update({{"samples", a.samples}, {"amplitude", a.amplitude}, {"frequency", a.frequency},
              {"noise", a.noise}, {"perturbation", q ? a.perturb : "none"}});
    if (q) p.update({{"magnitude", a.magnitude}, {"t_start", a.t_start}, {"t_end", a.t_end}});
  } else if (a.kind == "diffusion") {
    datagen::DiffusionParams dp{a.grid, a.D, a.dt, a.dx, a.dy, a.steps};
    const auto g = datagen::gen_diffusion_field(dp, seed);
    text = grid_text(g);
    if (!a.pgm.empty()) {
      std::ostringstream out;
      io::write_pgm(out, g);
      write_output(run, a.pgm, out.str());
    }
    p.update({{"n", a.grid}, {"D", a.D}, {"dt", a.dt}, {"dx", a.dx}, {"dy", a.dy}, {"steps", a.steps},
              {"stability_ratio", dp.stability_ratio()}});
  } else if (a.kind == "kde") {
    if (a.input.empty()) throw ParameterError("gen kde needs --input");
    auto in = open_input(a.input);
    const auto pc = io::read_point_cloud(in);
    std::optional<Eigen::Vector2d> h;
    if (a.bandwidth) h = Eigen::Vector2d::Constant(*a.bandwidth);
    const auto k = datagen::kde_grid(pc, a.resolution, h);
    text = grid_text(k.grid);
    p.update({{"input", a.input}, {"resolution", a.resolution},
              {"bandwidth", {k.bandwidth[0], k.bandwidth[1]}},
              {"bandwidth_rule", a.bandwidth ? "fixed" : "scott"},
              {"lower", {k.lower[0], k.lower[1]}}, {"cell", {k.cell[0], k.cell[1]}}});
    p.erase("seed");
  } else if (a.kind == "pockets") {
    text = grid_text(datagen::gen_pocket_voxels(a.pockets));
    p.update({{"pockets", a.pockets}});
    p.erase("seed");
  } else {
    throw ParameterError("unknown generator '" + a.kind + "'");
  }
  write_output(run, a.output, text);
  run.manifest = manifest_next_to(a.output);
  // replays must not depend on the environment
  if (!a.seed && p.contains("seed")) {
    run.args.push_back("--seed");
    run.args.push_back(std::to_string(seed));
  }
}

// ---------------------------------------------------------------- driver

int execute(std::vector<std::string> args) {
  CLI::App app{"Persistent homology toolkit: filtrations, diagrams, images and distances"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Run run;
  run.args = args;

  RipsArgs rips;
  auto* c_rips = app.add_subcommand("rips", "Vietoris-Rips persistence of a point cloud CSV");
  c_rips->add_option("input", rips.input, "point cloud CSV (or distance matrix with --distance-matrix)")->required();
  c_rips->add_option("-o,--output", rips.output, "diagram CSV")->required();
  c_rips->add_flag("--distance-matrix", rips.distance_matrix, "input is a square distance matrix");
  c_rips->add_option("--max-dim", rips.max_dim, "highest homology dimension (default 1 for 2D, 2 for 3D+)");
  c_rips->add_option("--max-scale", rips.max_scale, "filtration cutoff (default: enclosing radius)");
  c_rips->add_option("--convention", rips.convention, "radius | diameter");
  c_rips->add_option("--algorithm", rips.algorithm, "standard | twist | cohomology");
  c_rips->add_flag("--keep-zero", rips.keep_zero, "keep zero-persistence points");
  c_rips->add_option("--svg", rips.svg, "also write a diagram plot");
  c_rips->add_option("--cache", rips.cache, "also write the filtered complex for sparsify");

  GridArgs image, voxel;
  auto* c_image = app.add_subcommand("image", "cubical persistence of a PGM/PPM image");
  auto* c_voxel = app.add_subcommand("voxel", "cubical persistence of a voxel grid");
  for (auto [cmd, g] : {std::pair{c_image, &image}, std::pair{c_voxel, &voxel}}) {
    cmd->add_option("input", g->input, "image or voxel file")->required();
    cmd->add_option("-o,--output", g->output, "diagram CSV")->required();
    cmd->add_flag("--superlevel", g->superlevel, "filter by decreasing value (reported as t = -f)");
    cmd->add_option("--max-dim", g->max_dim, "highest homology dimension (default rank - 1)");
    cmd->add_option("--algorithm", g->algorithm, "standard | twist | cohomology");
    cmd->add_option("--svg", g->svg, "also write a diagram plot");
    cmd->add_option("--cache", g->cache, "also write the filtered complex for sparsify");
  }

  VectorizeArgs vec;
  auto* c_vec = app.add_subcommand("vectorize", "persistence images of diagram CSVs");
  c_vec->add_option("inputs", vec.inputs, "diagram CSV files")->required();
  c_vec->add_option("-o,--output", vec.output, "image JSON (array for several inputs)")->required();
  c_vec->add_option("--dim", vec.dim, "homology dimension");
  c_vec->add_option("--birth-pixels", vec.birth_pixels, "pixels along birth");
  c_vec->add_option("--persistence-pixels", vec.persistence_pixels, "pixels along persistence");
  c_vec->add_option("--sigma", vec.sigma, "Gaussian standard deviation");
  c_vec->add_option("--range", vec.range, "birth_min,birth_max,pers_min,pers_max")->delimiter(',');
  c_vec->add_option("--weight", vec.weight, "linear | constant");
  c_vec->add_option("--max-persistence", vec.max_persistence, "linear weight scale");
  c_vec->add_option("--essential-cap", vec.essential_cap, "death used for essential points");
  c_vec->add_flag("--no-essential", vec.no_essential, "ignore essential points");
  c_vec->add_flag("--shared-range", vec.shared_range, "one range and weight scale for all inputs");

  DistanceArgs dist;
  auto* c_dist = app.add_subcommand("distance", "bottleneck or Wasserstein distance of two diagrams");
  c_dist->add_option("first", dist.first)->required();
  c_dist->add_option("second", dist.second)->required();
  c_dist->add_option("-o,--output", dist.output, "report JSON")->required();
  c_dist->add_option("--metric", dist.metric, "bottleneck | wasserstein");
  c_dist->add_option("--p", dist.p, "Wasserstein exponent");
  c_dist->add_option("--dim", dist.dim, "homology dimension");

  SeriesArgs series;
  auto* c_series = app.add_subcommand("series", "sliding-window H1 diagrams of a two-column series");
  c_series->add_option("input", series.input, "CSV with columns f1,f2")->required();
  c_series->add_option("-o,--output", series.output_dir, "output directory")->required();
  c_series->add_option("--window", series.window, "window length")->required();
  c_series->add_option("--stride", series.stride, "window stride (default: window length)");
  c_series->add_flag("--svg", series.svg, "also plot each window");

  SparsifyArgs sp;
  auto* c_sp = app.add_subcommand("sparsify", "sparsest cycle representing a diagram point");
  c_sp->add_option("diagram", sp.diagram, "diagram CSV")->required();
  c_sp->add_option("--cache", sp.cache, "filtered complex written by rips/image/voxel --cache")->required();
  c_sp->add_option("--point", sp.point, "row of the diagram (0-based, after the header)")->required();
  c_sp->add_option("--budget", sp.budget, "exact search up to this many cofaces");
  c_sp->add_option("--scale", sp.scale, "search below this value (default: birth)");
  c_sp->add_option("-o,--output", sp.output, "cycle JSON")->required();

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "synthetic datasets");
  c_gen->add_option("kind", gen.kind, "annulus | double-annulus | clusters | series | diffusion | kde | pockets")
      ->required();
  c_gen->add_option("-o,--output", gen.output, "output file")->required();
  c_gen->add_option("--seed", gen.seed, "random seed (default: PH_SEED or 0)");
  c_gen->add_option("-n", gen.n, "points");
  c_gen->add_option("--radius", gen.radius);
  c_gen->add_option("--separation", gen.separation);
  c_gen->add_option("--spread", gen.spread);
  c_gen->add_option("--noise", gen.noise);
  c_gen->add_option("--samples", gen.samples);
  c_gen->add_option("--amplitude", gen.amplitude);
  c_gen->add_option("--frequency", gen.frequency);
  c_gen->add_option("--perturb", gen.perturb, "none | shift | oscillation");
  c_gen->add_option("--magnitude", gen.magnitude);
  c_gen->add_option("--t-start", gen.t_start);
  c_gen->add_option("--t-end", gen.t_end);
  c_gen->add_option("--grid", gen.grid, "diffusion grid side");
  c_gen->add_option("--D", gen.D, "diffusion coefficient");
  c_gen->add_option("--dt", gen.dt);
  c_gen->add_option("--dx", gen.dx);
  c_gen->add_option("--dy", gen.dy);
  c_gen->add_option("--steps", gen.steps);
  c_gen->add_option("--pgm", gen.pgm, "diffusion: also write a PGM preview");
  c_gen->add_option("--input", gen.input, "kde: point cloud CSV");
  c_gen->add_option("--resolution", gen.resolution, "kde grid side");
  c_gen->add_option("--bandwidth", gen.bandwidth, "kde bandwidth (default: Scott's rule)");
  c_gen->add_option("--pockets", gen.pockets, "pockets: number of enclosed pockets");

  std::vector<const char*> argv{"tda"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return parameter_error;
  }

  if (c_rips->parsed()) run_rips(run, rips);
  if (c_image->parsed()) run_grid(run, image, false);
  if (c_voxel->parsed()) run_grid(run, voxel, true);
  if (c_vec->parsed()) run_vectorize(run, vec);
  if (c_dist->parsed()) run_distance(run, dist);
  if (c_series->parsed()) run_series(run, series);
  if (c_sp->parsed()) run_sparsify(run, sp);
  if (c_gen->parsed()) run_gen(run, gen);
  run.params["subcommand"] = app.get_subcommands().front()->get_name();
  write_manifest(run);
  return ok;
}

std::vector<std::string> replay_args(const std::string& manifest_path) {
  json m;
  try {
    m = json::parse(io::read_file(manifest_path));
    if (m.at("tool") != "tda") throw InputError("not a tda manifest");
    return m.at("args").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (args.size() == 2 && args[0] == "--manifest") args = replay_args(args[1]);
    return execute(args);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return input_error;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return parameter_error;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return invariant_error;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return invariant_error;
  }
}
