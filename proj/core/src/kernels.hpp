#pragma once

// Allocation-free force kernels shared by the public force functions and the
// layout engines. Every kernel adds `sign * force` into `out`.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "redraw/errors.hpp"

namespace redraw::detail {

inline double horizontal_norm(const double* diff, std::size_t hdim) {
  double sum = 0.0;
  for (std::size_t i = 0; i < hdim; ++i) sum += diff[i] * diff[i];
  return std::sqrt(sum);
}

inline double horizontal_distance(const double* a, const double* b, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

inline double cos_distance(const double* a, const double* b, const double* c, const double* d, std::size_t dim) {
  double ab2 = 0.0, cd2 = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double u = b[i] - a[i];
    const double v = d[i] - c[i];
    ab2 += u * u;
    cd2 += v * v;
    dot += u * v;
  }
  if (ab2 == 0.0 || cd2 == 0.0) throw DegenerateGeometry("cosine distance of a zero-length segment");
  return 1.0 - dot / (std::sqrt(ab2) * std::sqrt(cd2));
}

inline double segment_distance(const double* p, const double* a, const double* b, std::size_t dim) {
  double len2 = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double ab = b[i] - a[i];
    len2 += ab * ab;
    dot += (p[i] - a[i]) * ab;
  }
  const double t = len2 > 0.0 ? std::clamp(dot / len2, 0.0, 1.0) : 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = p[i] - (a[i] + t * (b[i] - a[i]));
    sum += d * d;
  }
  return std::sqrt(sum);
}

/// Vertical component of f_vert for the cover a < b.
inline double vert_component(const double* a, const double* b, std::size_t dim, double c_vert) {
  const double dy = std::abs(b[dim - 1] - a[dim - 1]);
  if (dy == 0.0) throw DegenerateGeometry("vertical force between vertically coincident elements");
  const double dx = horizontal_distance(a, b, dim);
  return -c_vert * ((1.0 + dx) / dy - 1.0);
}

/// f_attr_node given the horizontal offset diff = (a - b)_x.
inline void attr_node_from_offset(const double* diff, std::size_t hdim, double c_hor, double* out, double sign) {
  const double dx = horizontal_norm(diff, hdim);
  if (dx == 0.0) return;
  const double scale = -std::min(dx * dx * dx, c_hor) / dx;
  for (std::size_t i = 0; i < hdim; ++i) out[i] += sign * scale * diff[i];
}

/// f_rep_node given the horizontal offset diff = (a - b)_x.
inline void rep_node_from_offset(const double* diff, std::size_t hdim, double c_hor, double* out, double sign) {
  const double dx = horizontal_norm(diff, hdim);
  if (dx == 0.0) throw DegenerateGeometry("horizontal repulsion between horizontally coincident elements");
  const double scale = c_hor / (dx * dx);
  for (std::size_t i = 0; i < hdim; ++i) out[i] += sign * scale * diff[i];
}

inline void par(const double* a, const double* b, const double* c, const double* d, std::size_t dim, double c_par,
                double* out, double sign) {
  const double weight = -(1.0 - cos_distance(a, b, c, d, dim) / c_par);
  const double dy_ab = b[dim - 1] - a[dim - 1];
  const double dy_cd = d[dim - 1] - c[dim - 1];
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    out[i] += sign * weight * ((b[i] - a[i]) / dy_ab - (d[i] - c[i]) / dy_cd);
  }
}

inline void ang(const double* a, const double* b, const double* c, std::size_t dim, double c_ang, double* out,
                double sign) {
  const double weight = 1.0 - cos_distance(a, c, b, c, dim) / c_ang;
  const double dy_ac = c[dim - 1] - a[dim - 1];
  const double dy_bc = c[dim - 1] - b[dim - 1];
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    out[i] += sign * weight * ((c[i] - a[i]) / dy_ac - (c[i] - b[i]) / dy_bc);
  }
}

/// f_dist with the segment distance supplied by the caller (must be > 0).
inline void dist_with(const double* a, const double* b, const double* c, std::size_t dim, double seg_distance,
                      double* out, double sign) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    num += (a[i] - c[i]) * (b[i] - c[i]);
    den += (b[i] - c[i]) * (b[i] - c[i]);
  }
  if (den == 0.0) throw DegenerateGeometry("distance force against a zero-length segment");
  const double proj = num / den;
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] += sign * ((a[i] - c[i]) - proj * (b[i] - c[i])) / seg_distance;
  }
}

inline void dist(const double* a, const double* b, const double* c, std::size_t dim, double* out, double sign) {
  const double seg = segment_distance(a, b, c, dim);
  if (seg == 0.0) throw DegenerateGeometry("element lies on the segment of the distance force");
  dist_with(a, b, c, dim, seg, out, sign);
}

/// Freese's repulsion denominator |dy|^3 + sum_i |dx_i|^3 over the horizontal offset.
inline double freese_denominator(const double* diff, std::size_t hdim, double dy) {
  double den = std::abs(dy) * dy * dy;
  for (std::size_t i = 0; i < hdim; ++i) den += std::abs(diff[i]) * diff[i] * diff[i];
  return den;
}

inline void rep_freese_from_offset(const double* diff, std::size_t hdim, double dy, double c_rep, double* out,
                                   double sign) {
  const double den = freese_denominator(diff, hdim, dy);
  if (den == 0.0) throw DegenerateGeometry("Freese repulsion between coincident points");
  // c_rep * d_x / den * u_x, with u_x = diff / d_x.
  const double scale = c_rep / den;
  for (std::size_t i = 0; i < hdim; ++i) out[i] += sign * scale * diff[i];
}

inline void attr_freese_from_offset(const double* diff, std::size_t hdim, double c_attr, double* out, double sign) {
  for (std::size_t i = 0; i < hdim; ++i) out[i] += sign * -c_attr * diff[i];
}

}  // namespace redraw::detail
