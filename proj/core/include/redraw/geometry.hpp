#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace redraw {

using Vec = std::vector<double>;

/// Points of an ordered set in R^dim, one per element. The last coordinate
/// of each point is its vertical component y; the first dim-1 are horizontal.
class Drawing {
 public:
  Drawing() = default;
  Drawing(std::size_t size, std::size_t dim) : size_(size), dim_(dim), coords_(size * dim, 0.0) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t horizontal_dim() const noexcept { return dim_ - 1; }

  std::span<double> point(std::size_t a) noexcept { return {coords_.data() + a * dim_, dim_}; }
  std::span<const double> point(std::size_t a) const noexcept { return {coords_.data() + a * dim_, dim_}; }

  double y(std::size_t a) const noexcept { return coords_[a * dim_ + dim_ - 1]; }
  double& y(std::size_t a) noexcept { return coords_[a * dim_ + dim_ - 1]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }

  bool operator==(const Drawing&) const = default;

 private:
  std::size_t size_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

using Point = std::span<const double>;

/// Euclidean distance d(p, q).
double distance(Point p, Point q);
/// Distance of the horizontal parts only, d_x(p, q).
double horizontal_distance(Point p, Point q);
/// |y_p - y_q|.
double vertical_distance(Point p, Point q);

/// Unit vector pointing from q towards p, i.e. the direction in which a force
/// on p pushes p away from q. Throws DegenerateGeometry if p == q.
Vec unit(Point p, Point q);
/// Horizontal unit vector from q towards p (vertical component 0). Throws
/// DegenerateGeometry if the horizontal parts coincide.
Vec horizontal_unit(Point p, Point q);

/// Cosine distance 1 - <b-a, d-c> / (|b-a| |d-c|) of the directed segments
/// (a,b) and (c,d). 0 for parallel, 2 for anti-parallel. Throws
/// DegenerateGeometry for zero-length segments.
double cos_distance(Point a, Point b, Point c, Point d);

/// Distance from p to the closed segment [a, b].
double point_segment_distance(Point p, Point a, Point b);

/// Component of (p - c) orthogonal to (b - c): the perpendicular offset of p
/// from the infinite line through b and c.
Vec rejection(Point p, Point b, Point c);

}  // namespace redraw
