#include "redraw/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "redraw/errors.hpp"

namespace redraw {

double distance(Point p, Point q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = p[i] - q[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double horizontal_distance(Point p, Point q) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double diff = p[i] - q[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double vertical_distance(Point p, Point q) { return std::abs(p.back() - q.back()); }

Vec unit(Point p, Point q) {
  const double len = distance(p, q);
  if (len == 0.0) throw DegenerateGeometry("unit vector between coincident points");
  Vec u(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) u[i] = (p[i] - q[i]) / len;
  return u;
}

Vec horizontal_unit(Point p, Point q) {
  const double len = horizontal_distance(p, q);
  if (len == 0.0) throw DegenerateGeometry("horizontal unit vector between horizontally coincident points");
  Vec u(p.size(), 0.0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) u[i] = (p[i] - q[i]) / len;
  return u;
}

double cos_distance(Point a, Point b, Point c, Point d) {
  const double len_ab = distance(a, b);
  const double len_cd = distance(c, d);
  if (len_ab == 0.0 || len_cd == 0.0) throw DegenerateGeometry("cosine distance of a zero-length segment");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += (b[i] - a[i]) * (d[i] - c[i]);
  return 1.0 - dot / (len_ab * len_cd);
}

double point_segment_distance(Point p, Point a, Point b) {
  double len2 = 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double ab = b[i] - a[i];
    len2 += ab * ab;
    dot += (p[i] - a[i]) * ab;
  }
  const double t = len2 > 0.0 ? std::clamp(dot / len2, 0.0, 1.0) : 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = p[i] - (a[i] + t * (b[i] - a[i]));
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

Vec rejection(Point p, Point b, Point c) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    num += (p[i] - c[i]) * (b[i] - c[i]);
    den += (b[i] - c[i]) * (b[i] - c[i]);
  }
  if (den == 0.0) throw DegenerateGeometry("rejection from a zero-length segment");
  const double scale = num / den;
  Vec r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = (p[i] - c[i]) - scale * (b[i] - c[i]);
  return r;
}

}  // namespace redraw
