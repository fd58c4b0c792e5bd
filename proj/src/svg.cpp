#include "flatpunct/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "flatpunct/errors.hpp"
#include "flatpunct/geom.hpp"

namespace flatpunct {

namespace {

// Fixed precision; "-0.000000" is folded to "0.000000" so output is stable.
std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool empty = true;
  void add(Vec2 p) {
    if (empty) {
      xmin = xmax = p.x;
      ymin = ymax = p.y;
      empty = false;
      return;
    }
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
};

// SVG's y axis points down; flip so the drawing keeps its orientation.
Vec2 screen(Vec2 p, double scale) { return {p.x * scale, -p.y * scale}; }

std::string points_attr(const std::vector<Vec2>& pts, double scale) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 q = screen(pts[i], scale);
    if (i) out += ' ';
    out += num(q.x) + ',' + num(q.y);
  }
  return out;
}

std::vector<Vec2> traversal(const DevelopedBoundary& dev) {
  std::vector<Vec2> pts = dev.points;
  pts.push_back(dev.end_point);
  return pts;
}

std::vector<Vec2> moved(const std::vector<Vec2>& pts, const RigidMotion& motion) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(motion.apply(p));
  return out;
}

std::vector<std::vector<Vec2>> cut_triangles(const FlatDiskMetric& metric,
                                             const ModificationPlan& plan) {
  std::vector<std::vector<Vec2>> out;
  FlatDiskMetric current = normalize(metric);
  for (const auto& step : plan.steps) {
    if (const auto* cut = std::get_if<TriCut>(&step)) {
      const auto dev = develop_boundary(current);
      const std::size_t k = current.size();
      const Vec2 from = dev.points[cut->i];
      const Vec2 to = cut->i + 1 < k ? dev.points[cut->i + 1] : dev.end_point;
      const double heading = std::atan2(to.y - from.y, to.x - from.x);
      const auto tri = solve_asa(cut->a, current.lengths()[cut->i], cut->v);
      // The removed triangle lies on the surface side, to the left.
      const Vec2 apex = from + unit(heading + cut->a) * tri.sides[1];
      out.push_back({from, apex, to});
    }
    current = apply_step(current, step);
  }
  return out;
}

}  // namespace

std::string render_svg(const FlatDiskMetric& metric, const ModificationPlan* overlay,
                       const SvgOptions& options) {
  require_valid(metric);
  const FlatDiskMetric base = normalize(metric);
  const DevelopedBoundary dev = develop_boundary(base);
  const double scale = options.scale;
  const std::vector<Vec2> main = traversal(dev);

  std::vector<std::vector<Vec2>> ghosts;
  RigidMotion forward = RigidMotion::identity();
  RigidMotion backward = RigidMotion::identity();
  for (int g = 0; g < options.ghosts; ++g) {
    forward = dev.closing_motion * forward;
    backward = dev.closing_motion.inverse() * backward;
    ghosts.push_back(moved(main, forward));
    ghosts.push_back(moved(main, backward));
  }
  std::vector<std::vector<Vec2>> cuts;
  if (overlay) cuts = cut_triangles(base, *overlay);

  Box box;
  for (const auto& p : main) box.add(screen(p, scale));
  for (const auto& ghost : ghosts) for (const auto& p : ghost) box.add(screen(p, scale));
  for (const auto& tri : cuts) for (const auto& p : tri) box.add(screen(p, scale));
  const double margin = 0.1 * scale;
  const double x0 = box.xmin - margin;
  const double y0 = box.ymin - margin;
  const double w = box.xmax - box.xmin + 2 * margin;
  const double h = box.ymax - box.ymin + 2 * margin;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(x0) + " " +
       num(y0) + " " + num(w) + " " + num(h) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
       "\">\n";
  s += "  <desc>developed boundary; scale " + num(scale) + " units per length</desc>\n";
  s += "  <g fill=\"none\" stroke-linejoin=\"round\">\n";
  for (const auto& ghost : ghosts) {
    s += "    <polyline class=\"ghost\" stroke=\"#999999\" stroke-dasharray=\"4 3\" points=\"" +
         points_attr(ghost, scale) + "\"/>\n";
  }
  for (const auto& tri : cuts) {
    s += "    <polygon class=\"cut\" fill=\"#f4c7a1\" fill-opacity=\"0.5\" stroke=\"#c0602a\" "
         "points=\"" + points_attr(tri, scale) + "\"/>\n";
  }
  s += "    <polyline class=\"boundary\" stroke=\"#1f4e8c\" stroke-width=\"2\" points=\"" +
       points_attr(main, scale) + "\"/>\n";
  s += "  </g>\n";
  if (!base.is_cylinder()) {
    s += "  <g class=\"vertices\" fill=\"#1f4e8c\" font-family=\"monospace\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < dev.points.size(); ++i) {
      const Vec2 q = screen(dev.points[i], scale);
      s += "    <circle cx=\"" + num(q.x) + "\" cy=\"" + num(q.y) + "\" r=\"3\"/>\n";
      if (options.labels) {
        char label[64];
        std::snprintf(label, sizeof label, "%.4f", base.kappas()[i] / kPi);
        s += "    <text x=\"" + num(q.x + 5) + "\" y=\"" + num(q.y - 5) + "\">" +
             std::to_string(i) + ": " + label + "&#960;</text>\n";
      }
    }
    s += "  </g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace flatpunct
