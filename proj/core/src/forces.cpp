#include "redraw/forces.hpp"

#include "kernels.hpp"

namespace redraw {

namespace {

Vec horizontal_offset(Point a, Point b) {
  Vec diff(a.size() - 1);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) diff[i] = a[i] - b[i];
  return diff;
}

}  // namespace

Vec f_vert(Point a, Point b, double c_vert) {
  Vec out(a.size(), 0.0);
  out.back() = detail::vert_component(a.data(), b.data(), a.size(), c_vert);
  return out;
}

Vec f_attr_node(Point a, Point b, double c_hor) {
  Vec out(a.size(), 0.0);
  const Vec diff = horizontal_offset(a, b);
  detail::attr_node_from_offset(diff.data(), diff.size(), c_hor, out.data(), 1.0);
  return out;
}

Vec f_rep_node(Point a, Point b, double c_hor) {
  Vec out(a.size(), 0.0);
  const Vec diff = horizontal_offset(a, b);
  detail::rep_node_from_offset(diff.data(), diff.size(), c_hor, out.data(), 1.0);
  return out;
}

Vec f_par(Point a, Point b, Point c, Point d, double c_par) {
  Vec out(a.size(), 0.0);
  detail::par(a.data(), b.data(), c.data(), d.data(), a.size(), c_par, out.data(), 1.0);
  return out;
}

Vec f_ang(Point a, Point b, Point c, double c_ang) {
  Vec out(a.size(), 0.0);
  detail::ang(a.data(), b.data(), c.data(), a.size(), c_ang, out.data(), 1.0);
  return out;
}

Vec f_dist(Point a, Point b, Point c) {
  Vec out(a.size(), 0.0);
  detail::dist(a.data(), b.data(), c.data(), a.size(), out.data(), 1.0);
  return out;
}

Vec f_attr_freese(Point a, Point b, double c_attr) {
  Vec out(a.size(), 0.0);
  const Vec diff = horizontal_offset(a, b);
  detail::attr_freese_from_offset(diff.data(), diff.size(), c_attr, out.data(), 1.0);
  return out;
}

Vec f_rep_freese(Point a, Point b, double c_rep) {
  Vec out(a.size(), 0.0);
  const Vec diff = horizontal_offset(a, b);
  detail::rep_freese_from_offset(diff.data(), diff.size(), a.back() - b.back(), c_rep, out.data(), 1.0);
  return out;
}

}  // namespace redraw
