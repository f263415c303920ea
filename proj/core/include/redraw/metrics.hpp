#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "redraw/geometry.hpp"
#include "redraw/order.hpp"

namespace redraw {

/// Number of unordered cover-line pairs whose segments cross in their
/// interiors. Lines sharing an endpoint never count; collinear overlaps are
/// left to validate_drawing.
std::size_t crossing_count(const OrderedSet& order, const Drawing& drawing);

enum class ViolationKind { kVertical, kCoincidentNodes, kNodeOnLine };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t a = 0;  ///< element (kVertical: lesser element)
  std::size_t b = 0;  ///< kVertical: greater element; kCoincidentNodes: other element; kNodeOnLine: cover index
  std::string describe(const OrderedSet& order) const;
};

/// Tolerance under which two dots coincide or a dot touches a line.
inline constexpr double kTouchTolerance = 1e-9;

/// Hard-constraint check of a 2D drawing: greater elements strictly higher,
/// no two dots at the same position, no dot on a non-incident line.
std::vector<Violation> validate_drawing(const OrderedSet& order, const Drawing& drawing);

/// Truncated relative distributivity of a lattice: the share of ordered
/// triples (x, y, z) of pairwise distinct elements with
/// x meet (y join z) = (x meet y) join (x meet z), ignoring triples whose
/// left-hand side is the bottom element. 1.0 when no triple is eligible.
/// Throws NotALattice.
double rtd(const OrderedSet& order);

struct MetricsReport {
  std::size_t elements = 0;
  std::size_t edges = 0;
  std::size_t crossings = 0;
  std::optional<double> min_node_line_distance;  ///< none without a non-incident node/line pair
  std::size_t distinct_edge_directions = 0;
  bool vertical_ok = true;
  std::size_t coincident_nodes = 0;
  std::size_t violations = 0;
  std::optional<double> rtd;  ///< present iff the order is a lattice
};

MetricsReport compute_metrics(const OrderedSet& order, const Drawing& drawing);

/// `key: value` lines in a fixed order.
std::string to_key_value(const MetricsReport& report);

}  // namespace redraw
