#include "tda/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tda {
namespace {

constexpr double size = 400.0;
constexpr double margin = 40.0;
const char* const colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void marker(std::ostringstream& out, int dim, double x, double y) {
  const char* colour = colours[std::min(dim, 3)];
  switch (dim) {
    case 0:
      out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
      break;
    case 1:
      out << "<rect x=\"" << fmt(x - 3) << "\" y=\"" << fmt(y - 3)
          << "\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"" << colour << "\"/>\n";
      break;
    default:
      out << "<path d=\"M" << fmt(x) << ' ' << fmt(y - 4) << " L" << fmt(x + 4) << ' ' << fmt(y + 3)
          << " L" << fmt(x - 4) << ' ' << fmt(y + 3) << " Z\" fill=\"none\" stroke=\"" << colour
          << "\"/>\n";
  }
}

}  // namespace

std::string diagram_svg(const PersistenceDiagram& diagram, const std::string& title) {
  double lo = 0.0, hi = 1.0;
  bool any = false;
  bool essential = false;
  for (const auto& p : diagram.points) {
    const double top = p.essential() ? p.birth : p.death;
    if (!any) {
      lo = std::min(p.birth, 0.0);
      hi = top;
      any = true;
    }
    lo = std::min(lo, p.birth);
    hi = std::max(hi, top);
    essential = essential || p.essential();
  }
  if (!(hi > lo)) hi = lo + 1.0;
  const double span = hi - lo;
  hi += 0.1 * span;  // headroom for the essential line
  const double plot = size - 2 * margin;
  auto sx = [&](double v) { return margin + (v - lo) / (hi - lo) * plot; };
  auto sy = [&](double v) { return size - margin - (v - lo) / (hi - lo) * plot; };
  const double inf_y = sy(hi - 0.05 * span);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << size / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n";
  }
  out << "<line x1=\"" << fmt(sx(lo)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\"" << fmt(sx(hi))
      << "\" y2=\"" << fmt(sy(hi)) << "\" stroke=\"gray\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << size - margin
      << "\" y2=\"" << size - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << size - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << size / 2 << "\" y=\"" << size - 8 << "\" text-anchor=\"middle\" font-size=\"12\">birth</text>\n";
  out << "<text x=\"12\" y=\"" << size / 2 << "\" font-size=\"12\" transform=\"rotate(-90 12 "
      << size / 2 << ")\" text-anchor=\"middle\">death</text>\n";
  out << "<text x=\"" << margin << "\" y=\"" << size - margin + 14 << "\" font-size=\"10\">" << fmt(lo) << "</text>\n";
  out << "<text x=\"" << size - margin << "\" y=\"" << size - margin + 14
      << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(hi) << "</text>\n";
  if (essential) {
    out << "<line x1=\"" << margin << "\" y1=\"" << fmt(inf_y) << "\" x2=\"" << size - margin
        << "\" y2=\"" << fmt(inf_y) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    out << "<text x=\"" << size - margin << "\" y=\"" << fmt(inf_y - 4)
        << "\" font-size=\"10\" text-anchor=\"end\">inf</text>\n";
  }
  auto points = diagram.points;
  std::sort(points.begin(), points.end());
  for (const auto& p : points) {
    marker(out, p.dim, sx(p.birth), p.essential() ? inf_y : sy(p.death));
  }
  int max_dim = -1;
  for (const auto& p : points) max_dim = std::max(max_dim, p.dim);
  for (int d = 0; d <= max_dim; ++d) {
    const double y = margin + 14.0 * d;
    marker(out, d, size - margin - 40, y);
    out << "<text x=\"" << size - margin - 32 << "\" y=\"" << fmt(y + 4) << "\" font-size=\"10\">H"
        << d << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tda
