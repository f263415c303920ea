#include "redraw/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <utility>

#include "redraw/errors.hpp"

namespace redraw {

namespace {

void require_2d(const Drawing& drawing) {
  if (drawing.dim() != 2) throw Error("metrics are defined for two-dimensional drawings only");
}

double orientation(Point p, Point q, Point r) {
  return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
}

bool proper_intersection(Point a, Point b, Point c, Point d) {
  const double o1 = orientation(a, b, c);
  const double o2 = orientation(a, b, d);
  const double o3 = orientation(c, d, a);
  const double o4 = orientation(c, d, b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kVertical: return "vertical";
    case ViolationKind::kCoincidentNodes: return "coincident-nodes";
    case ViolationKind::kNodeOnLine: return "node-on-line";
  }
  return "unknown";
}

std::string Violation::describe(const OrderedSet& order) const {
  switch (kind) {
    case ViolationKind::kVertical:
      return "vertical: " + order.id(a) + " < " + order.id(b) + " but not drawn below it";
    case ViolationKind::kCoincidentNodes:
      return "coincident-nodes: " + order.id(a) + " and " + order.id(b);
    case ViolationKind::kNodeOnLine: {
      const auto [lo, hi] = order.covers().pairs.at(b);
      return "node-on-line: " + order.id(a) + " touches " + order.id(lo) + " -- " + order.id(hi);
    }
  }
  return "unknown";
}

std::size_t crossing_count(const OrderedSet& order, const Drawing& drawing) {
  require_2d(drawing);
  const auto& edges = order.covers().pairs;
  std::size_t count = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    for (std::size_t f = e + 1; f < edges.size(); ++f) {
      const auto [c, d] = edges[f];
      if (a == c || a == d || b == c || b == d) continue;
      if (proper_intersection(drawing.point(a), drawing.point(b), drawing.point(c), drawing.point(d))) ++count;
    }
  }
  return count;
}

std::vector<Violation> validate_drawing(const OrderedSet& order, const Drawing& drawing) {
  require_2d(drawing);
  std::vector<Violation> out;
  const std::size_t n = order.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (order.less(a, b) && !(drawing.y(a) < drawing.y(b))) out.push_back({ViolationKind::kVertical, a, b});
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (distance(drawing.point(a), drawing.point(b)) < kTouchTolerance) {
        out.push_back({ViolationKind::kCoincidentNodes, a, b});
      }
    }
  }
  const auto& edges = order.covers().pairs;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [lo, hi] = edges[e];
    for (std::size_t a = 0; a < n; ++a) {
      if (a == lo || a == hi) continue;
      if (point_segment_distance(drawing.point(a), drawing.point(lo), drawing.point(hi)) < kTouchTolerance) {
        out.push_back({ViolationKind::kNodeOnLine, a, e});
      }
    }
  }
  return out;
}

double rtd(const OrderedSet& order) {
  const LatticeTables lattice(order);
  const std::size_t n = order.size();
  const std::size_t bottom = lattice.bottom();
  std::size_t eligible = 0;
  std::size_t distributive = 0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        const std::size_t lhs = lattice.meet(x, lattice.join(y, z));
        if (lhs == bottom) continue;
        ++eligible;
        if (lhs == lattice.join(lattice.meet(x, y), lattice.meet(x, z))) ++distributive;
      }
    }
  }
  if (eligible == 0) return 1.0;
  return static_cast<double>(distributive) / static_cast<double>(eligible);
}

MetricsReport compute_metrics(const OrderedSet& order, const Drawing& drawing) {
  require_2d(drawing);
  MetricsReport report;
  report.elements = order.size();
  report.edges = order.covers().pairs.size();
  report.crossings = crossing_count(order, drawing);

  const auto& edges = order.covers().pairs;
  double best = std::numeric_limits<double>::infinity();
  std::set<std::pair<long long, long long>> directions;
  for (const auto& [lo, hi] : edges) {
    const auto p = drawing.point(lo);
    const auto q = drawing.point(hi);
    for (std::size_t a = 0; a < order.size(); ++a) {
      if (a == lo || a == hi) continue;
      best = std::min(best, point_segment_distance(drawing.point(a), p, q));
    }
    const double len = distance(p, q);
    if (len > 0.0) {
      directions.emplace(std::llround((q[0] - p[0]) / len * 1e6), std::llround((q[1] - p[1]) / len * 1e6));
    }
  }
  if (std::isfinite(best)) report.min_node_line_distance = best;
  report.distinct_edge_directions = directions.size();

  const auto violations = validate_drawing(order, drawing);
  report.violations = violations.size();
  for (const auto& v : violations) {
    if (v.kind == ViolationKind::kVertical) report.vertical_ok = false;
    if (v.kind == ViolationKind::kCoincidentNodes) ++report.coincident_nodes;
  }
  if (is_lattice(order)) report.rtd = rtd(order);
  return report;
}

std::string to_key_value(const MetricsReport& report) {
  std::string out;
  auto line = [&](const char* key, const std::string& value) {
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  line("elements", std::to_string(report.elements));
  line("edges", std::to_string(report.edges));
  line("crossings", std::to_string(report.crossings));
  line("min_node_line_distance",
       report.min_node_line_distance ? format_double(*report.min_node_line_distance) : "none");
  line("distinct_edge_directions", std::to_string(report.distinct_edge_directions));
  line("vertical_ok", report.vertical_ok ? "true" : "false");
  line("coincident_nodes", std::to_string(report.coincident_nodes));
  line("violations", std::to_string(report.violations));
  line("rtd", report.rtd ? format_double(*report.rtd) : "none");
  return out;
}

}  // namespace redraw
