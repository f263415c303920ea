#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redraw/geometry.hpp"
#include "redraw/metrics.hpp"
#include "redraw/order.hpp"

namespace redraw {

/// Cover-edge list: one `lower<TAB>upper` pair per line, a single token
/// declares an isolated element, `#` starts a comment line. Elements are
/// numbered in order of first appearance. Throws ParseError or CycleDetected.
OrderedSet parse_cover_edges(std::string_view text);

/// Inverse of parse_cover_edges: isolated elements first, then the covers.
std::string write_cover_edges(const OrderedSet& order);

struct DocumentMetadata {
  std::string algorithm;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, double>> params;

  bool operator==(const DocumentMetadata&) const = default;
};

/// An ordered set together with a 2D drawing of it.
struct DiagramDocument {
  OrderedSet order;
  Drawing drawing;
  DocumentMetadata metadata;
};

inline constexpr int kDocumentVersion = 1;

/// JSON schema version 1:
///
///     {"version": 1,
///      "metadata": {"algorithm": ..., "seed": ..., "params": {...}},
///      "elements": [{"id": ..., "x": ..., "y": ...}, ...],
///      "covers": [[lower, upper], ...]}
///
/// Field order is fixed and doubles round-trip exactly.
std::string write_json(const DiagramDocument& doc);
/// Throws ParseError for malformed documents and CycleDetected for cyclic covers.
DiagramDocument read_json(std::string_view text);

struct SvgStyle {
  double height_px = 400.0;
  bool labels = true;
};

/// SVG 1.1 with circles for elements and straight lines for covers. Larger
/// y renders higher. The viewport is the bounding box plus a 5% margin and
/// node radius is 4% of the bounding box height.
std::string write_svg(const DiagramDocument& doc, const SvgStyle& style = {});

/// TikZ picture fragment: one \node per element and one \draw per cover.
std::string write_tikz(const DiagramDocument& doc);

std::string metrics_to_json(const MetricsReport& report);

}  // namespace redraw
