#pragma once

#include "redraw/geometry.hpp"

namespace redraw {

// Force on the first argument. All results have the dimension of the inputs;
// horizontal forces carry a zero vertical component.

/// Vertical spring along a cover pair a < b: (0,...,0, -c_vert((1+d_x)/d_y - 1)).
/// Applied to a; b receives the negation. Zero exactly when d_y = 1 + d_x.
/// Throws DegenerateGeometry when d_y = 0.
Vec f_vert(Point a, Point b, double c_vert);

/// Horizontal attraction between comparable elements:
/// -min(d_x^3, c_hor) u_x(a, b). The zero vector when d_x = 0.
Vec f_attr_node(Point a, Point b, double c_hor);

/// Horizontal repulsion between incomparable elements: (c_hor / d_x) u_x(a, b).
/// Throws DegenerateGeometry when d_x = 0.
Vec f_rep_node(Point a, Point b, double c_hor);

/// Acts on a for the almost-parallel cover lines (a,b) and (c,d);
/// b receives the negation.
Vec f_par(Point a, Point b, Point c, Point d, double c_par);

/// Acts on a for the lines (a,c) and (b,c) that share the endpoint c.
Vec f_ang(Point a, Point b, Point c, double c_ang);

/// Pushes a away from the line through (b,c): the rejection of (a-c) from
/// (b-c), divided by the distance of a to the segment. b and c each receive
/// minus half of it. Throws DegenerateGeometry if a lies on the segment.
Vec f_dist(Point a, Point b, Point c);

/// Freese's horizontal attraction for comparable pairs: -c_attr d_x u_x(a, b).
Vec f_attr_freese(Point a, Point b, double c_attr);

/// Freese's horizontal repulsion for incomparable pairs in three dimensions:
/// c_rep d_x / (|dy|^3 + |dx1|^3 + |dx2|^3) u_x(a, b). Throws
/// DegenerateGeometry for coincident points.
Vec f_rep_freese(Point a, Point b, double c_rep);

}  // namespace redraw
