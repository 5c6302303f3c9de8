#include "tda/persistence_image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include "json.hpp"
#include <vector>

#include "tda/error.hpp"

namespace tda {
namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::string number(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

struct Transformed {
  double birth;
  double persistence;
};

}  // namespace

std::string weight_name(WeightKind kind) {
  return kind == WeightKind::linear ? "linear" : "constant";
}

PersistenceImage persistence_image(const PersistenceDiagram& diagram,
                                   const PersistenceImageParams& params) {
  if (!(params.sigma > 0)) throw ParameterError("sigma must be > 0");
  if (params.birth_pixels < 1 || params.persistence_pixels < 1) {
    throw ParameterError("resolution must be at least 1x1");
  }

  std::vector<Transformed> points;
  for (const auto& p : diagram.points) {
    if (p.dim != params.dim) continue;
    double death = p.death;
    if (p.essential()) {
      if (!params.include_essential || !diagram.metadata.essential_cap) continue;
      death = std::max(*diagram.metadata.essential_cap, p.birth);
    }
    points.push_back({p.birth, death - p.birth});
  }

  PersistenceImage image;
  image.dim = params.dim;
  image.sigma = params.sigma;
  image.weight = params.weight.kind;

  if (params.range) {
    image.range = *params.range;
  } else if (!points.empty()) {
    const double pad = 3.0 * params.sigma;
    image.range = {infinity, -infinity, infinity, -infinity};
    for (const auto& t : points) {
      image.range.birth_min = std::min(image.range.birth_min, t.birth);
      image.range.birth_max = std::max(image.range.birth_max, t.birth);
      image.range.persistence_min = std::min(image.range.persistence_min, t.persistence);
      image.range.persistence_max = std::max(image.range.persistence_max, t.persistence);
    }
    image.range.birth_min -= pad;
    image.range.birth_max += pad;
    image.range.persistence_min -= pad;
    image.range.persistence_max += pad;
  }
  const ImageRange& r = image.range;
  if (!(r.birth_max > r.birth_min) || !(r.persistence_max > r.persistence_min) ||
      !std::isfinite(r.birth_min) || !std::isfinite(r.birth_max) ||
      !std::isfinite(r.persistence_min) || !std::isfinite(r.persistence_max)) {
    throw ParameterError("empty range rectangle");
  }

  if (params.weight.kind == WeightKind::linear) {
    double scale = 0.0;
    if (params.weight.max_persistence) {
      scale = *params.weight.max_persistence;
      if (!(scale > 0)) throw ParameterError("max_persistence must be > 0");
    } else {
      for (const auto& t : points) scale = std::max(scale, t.persistence);
      if (!(scale > 0)) scale = 1.0;
    }
    image.weight_scale = scale;
  }

  const std::size_t n = params.birth_pixels;
  const std::size_t m = params.persistence_pixels;
  image.pixels = PixelMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  const double bw = (r.birth_max - r.birth_min) / static_cast<double>(n);
  const double pw = (r.persistence_max - r.persistence_min) / static_cast<double>(m);

  std::vector<double> birth_mass(n);
  std::vector<double> pers_mass(m);
  for (const auto& t : points) {
    const double w = params.weight.kind == WeightKind::linear ? t.persistence / image.weight_scale : 1.0;
    if (w == 0.0) continue;
    double lo = normal_cdf((r.birth_min - t.birth) / params.sigma);
    for (std::size_t i = 0; i < n; ++i) {
      const double edge = i + 1 == n ? r.birth_max : r.birth_min + bw * static_cast<double>(i + 1);
      const double hi = normal_cdf((edge - t.birth) / params.sigma);
      birth_mass[i] = hi - lo;
      lo = hi;
    }
    lo = normal_cdf((r.persistence_min - t.persistence) / params.sigma);
    for (std::size_t j = 0; j < m; ++j) {
      const double edge =
          j + 1 == m ? r.persistence_max : r.persistence_min + pw * static_cast<double>(j + 1);
      const double hi = normal_cdf((edge - t.persistence) / params.sigma);
      pers_mass[j] = hi - lo;
      lo = hi;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        image.pixels(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            w * birth_mass[i] * pers_mass[j];
      }
    }
  }
  return image;
}

std::string PersistenceImage::to_json() const {
  std::string out = "{\"dim\":" + std::to_string(dim);
  out += ",\"resolution\":[" + std::to_string(pixels.rows()) + "," + std::to_string(pixels.cols()) + "]";
  out += ",\"range\":[" + number(range.birth_min) + "," + number(range.birth_max) + "," +
         number(range.persistence_min) + "," + number(range.persistence_max) + "]";
  out += ",\"sigma\":" + number(sigma);
  out += ",\"weight\":{\"kind\":\"" + weight_name(weight) + "\",\"max_persistence\":" +
         number(weight_scale) + "}";
  out += ",\"pixels\":[";
  for (Eigen::Index k = 0; k < pixels.size(); ++k) {
    if (k) out += ',';
    out += number(pixels.data()[k]);
  }
  out += "]}\n";
  return out;
}

PersistenceImage PersistenceImage::from_json(const std::string& text) {
  PersistenceImage image;
  try {
    const auto j = nlohmann::json::parse(text);
    image.dim = j.at("dim").get<int>();
    const auto res = j.at("resolution").get<std::vector<std::size_t>>();
    const auto range = j.at("range").get<std::vector<double>>();
    if (res.size() != 2 || range.size() != 4) throw InputError("malformed image header");
    image.range = {range[0], range[1], range[2], range[3]};
    image.sigma = j.at("sigma").get<double>();
    image.weight = j.at("weight").at("kind").get<std::string>() == "linear" ? WeightKind::linear
                                                                          : WeightKind::constant;
    image.weight_scale = j.at("weight").at("max_persistence").get<double>();
    const auto px = j.at("pixels").get<std::vector<double>>();
    if (px.size() != res[0] * res[1]) throw InputError("pixel count does not match resolution");
    image.pixels = Eigen::Map<const PixelMatrix>(px.data(), static_cast<Eigen::Index>(res[0]),
                                                 static_cast<Eigen::Index>(res[1]));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed persistence image: ") + e.what());
  }
  return image;
}

}  // namespace tda
