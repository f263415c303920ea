#include "redraw/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include "json.hpp"
#include "redraw/errors.hpp"

namespace redraw {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0.000" || s == "-0") s.erase(0, 1);
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tex_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '\\': out += "\\textbackslash{}"; break;
      case '{': case '}': case '_': case '&': case '%': case '$': case '#':
        out += '\\';
        out += c;
        break;
      case '^': out += "\\^{}"; break;
      case '~': out += "\\~{}"; break;
      default: out += c;
    }
  }
  return out;
}

void require_document(const DiagramDocument& doc) {
  if (doc.drawing.size() != doc.order.size() || doc.drawing.dim() != 2) {
    throw Error("document drawing must be two-dimensional with one point per element");
  }
}

}  // namespace

OrderedSet parse_cover_edges(std::string_view text) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Pair> pairs;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] = index.emplace(std::string(token), ids.size());
    if (inserted) ids.emplace_back(token);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      if (line.find_first_of(" ") != std::string_view::npos) {
        throw ParseError(line_no, "expected 'lower<TAB>upper' or a single element id");
      }
      intern(line);
      continue;
    }
    const std::string_view lower = trim(line.substr(0, tab));
    const std::string_view upper = trim(line.substr(tab + 1));
    if (lower.empty() || upper.empty() || upper.find('\t') != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two tab-separated element ids");
    }
    if (lower == upper) throw ParseError(line_no, "an element cannot cover itself");
    const std::size_t a = intern(lower);
    const std::size_t b = intern(upper);
    pairs.emplace_back(a, b);
  }
  return order_from_pairs(std::move(ids), pairs);
}

std::string write_cover_edges(const OrderedSet& order) {
  std::string out;
  const auto& covers = order.covers();
  for (std::size_t a = 0; a < order.size(); ++a) {
    if (covers.lower[a].empty() && covers.upper[a].empty()) out += order.id(a) + "\n";
  }
  for (const auto& [lo, hi] : covers.pairs) out += order.id(lo) + "\t" + order.id(hi) + "\n";
  return out;
}

std::string write_json(const DiagramDocument& doc) {
  require_document(doc);
  ordered_json j;
  j["version"] = kDocumentVersion;
  ordered_json meta = ordered_json::object();
  meta["algorithm"] = doc.metadata.algorithm;
  if (doc.metadata.seed) {
    meta["seed"] = *doc.metadata.seed;
  } else {
    meta["seed"] = nullptr;
  }
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : doc.metadata.params) params[key] = value;
  meta["params"] = std::move(params);
  j["metadata"] = std::move(meta);

  ordered_json elements = ordered_json::array();
  for (std::size_t a = 0; a < doc.order.size(); ++a) {
    ordered_json e;
    e["id"] = doc.order.id(a);
    e["x"] = doc.drawing.point(a)[0];
    e["y"] = doc.drawing.point(a)[1];
    elements.push_back(std::move(e));
  }
  j["elements"] = std::move(elements);

  ordered_json covers = ordered_json::array();
  for (const auto& [lo, hi] : doc.order.covers().pairs) covers.push_back({doc.order.id(lo), doc.order.id(hi)});
  j["covers"] = std::move(covers);
  return j.dump(2) + "\n";
}

DiagramDocument read_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("version", 0) != kDocumentVersion) {
      throw ParseError(1, "unsupported document version (expected 1)");
    }
    DiagramDocument doc;
    if (j.contains("metadata")) {
      const auto& meta = j.at("metadata");
      doc.metadata.algorithm = meta.value("algorithm", std::string());
      if (meta.contains("seed") && !meta.at("seed").is_null()) doc.metadata.seed = meta.at("seed").get<std::uint64_t>();
      if (meta.contains("params")) {
        for (const auto& [key, value] : meta.at("params").items()) {
          doc.metadata.params.emplace_back(key, value.get<double>());
        }
      }
    }
    std::vector<std::string> ids;
    std::vector<double> coords;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& e : j.at("elements")) {
      std::string id = e.at("id").get<std::string>();
      if (!index.emplace(id, ids.size()).second) throw ParseError(1, "duplicate element id '" + id + "'");
      ids.push_back(std::move(id));
      coords.push_back(e.at("x").get<double>());
      coords.push_back(e.at("y").get<double>());
    }
    std::vector<Pair> pairs;
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw ParseError(1, "each cover must be a [lower, upper] pair");
      const auto lo = index.find(c[0].get<std::string>());
      const auto hi = index.find(c[1].get<std::string>());
      if (lo == index.end() || hi == index.end()) throw ParseError(1, "cover refers to an unknown element");
      pairs.emplace_back(lo->second, hi->second);
    }
    doc.order = order_from_pairs(std::move(ids), pairs);
    doc.drawing = Drawing(doc.order.size(), 2);
    std::copy(coords.begin(), coords.end(), doc.drawing.coords().begin());
    for (const double v : coords) {
      if (!std::isfinite(v)) throw ParseError(1, "coordinates must be finite");
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("malformed document: ") + e.what());
  }
}

std::string write_svg(const DiagramDocument& doc, const SvgStyle& style) {
  require_document(doc);
  const std::size_t n = doc.order.size();
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  if (n > 0) {
    min_x = max_x = doc.drawing.point(0)[0];
    min_y = max_y = doc.drawing.point(0)[1];
  }
  for (std::size_t a = 0; a < n; ++a) {
    const auto p = doc.drawing.point(a);
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double width = max_x - min_x;
  const double height = max_y - min_y;
  const double extent = std::max({width, height, 0.0}) > 0.0 ? std::max(width, height) : 1.0;
  const double margin = 0.05 * extent;
  const double radius = 0.04 * (height > 0.0 ? height : extent);
  const double scale = style.height_px / (extent + 2.0 * margin);
  const double view_w = (width + 2.0 * margin) * scale;
  const double view_h = (height + 2.0 * margin) * scale;
  auto px = [&](double x) { return (x - min_x + margin) * scale; };
  auto py = [&](double y) { return (max_y - y + margin) * scale; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(view_w) + "\" height=\"" +
         fixed(view_h) + "\" viewBox=\"0 0 " + fixed(view_w) + " " + fixed(view_h) + "\">\n";
  out += "  <g stroke=\"black\" stroke-width=\"" + fixed(radius * scale / 4.0) + "\">\n";
  for (const auto& [lo, hi] : doc.order.covers().pairs) {
    const auto p = doc.drawing.point(lo);
    const auto q = doc.drawing.point(hi);
    out += "    <line x1=\"" + fixed(px(p[0])) + "\" y1=\"" + fixed(py(p[1])) + "\" x2=\"" + fixed(px(q[0])) +
           "\" y2=\"" + fixed(py(q[1])) + "\"/>\n";
  }
  out += "  </g>\n";
  out += "  <g fill=\"black\">\n";
  for (std::size_t a = 0; a < n; ++a) {
    const auto p = doc.drawing.point(a);
    out += "    <circle id=\"n" + std::to_string(a) + "\" cx=\"" + fixed(px(p[0])) + "\" cy=\"" + fixed(py(p[1])) +
           "\" r=\"" + fixed(radius * scale) + "\"><title>" + xml_escape(doc.order.id(a)) + "</title></circle>\n";
  }
  out += "  </g>\n";
  if (style.labels) {
    out += "  <g font-family=\"sans-serif\" font-size=\"" + fixed(radius * scale * 2.5) + "\">\n";
    for (std::size_t a = 0; a < n; ++a) {
      const auto p = doc.drawing.point(a);
      out += "    <text x=\"" + fixed(px(p[0]) + radius * scale * 1.5) + "\" y=\"" + fixed(py(p[1])) + "\">" +
             xml_escape(doc.order.id(a)) + "</text>\n";
    }
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string write_tikz(const DiagramDocument& doc) {
  require_document(doc);
  std::string out = "\\begin{tikzpicture}\n";
  for (std::size_t a = 0; a < doc.order.size(); ++a) {
    const auto p = doc.drawing.point(a);
    out += "  \\node[circle, fill, inner sep=1.5pt, label=right:{" + tex_escape(doc.order.id(a)) + "}] (n" +
           std::to_string(a) + ") at (" + fixed(p[0], 4) + ", " + fixed(p[1], 4) + ") {};\n";
  }
  for (const auto& [lo, hi] : doc.order.covers().pairs) {
    out += "  \\draw (n" + std::to_string(lo) + ") -- (n" + std::to_string(hi) + ");\n";
  }
  out += "\\end{tikzpicture}\n";
  return out;
}

std::string metrics_to_json(const MetricsReport& report) {
  ordered_json j;
  j["version"] = kDocumentVersion;
  j["elements"] = report.elements;
  j["edges"] = report.edges;
  j["crossings"] = report.crossings;
  if (report.min_node_line_distance) {
    j["min_node_line_distance"] = *report.min_node_line_distance;
  } else {
    j["min_node_line_distance"] = nullptr;
  }
  j["distinct_edge_directions"] = report.distinct_edge_directions;
  j["vertical_ok"] = report.vertical_ok;
  j["coincident_nodes"] = report.coincident_nodes;
  j["violations"] = report.violations;
  if (report.rtd) {
    j["rtd"] = *report.rtd;
  } else {
    j["rtd"] = nullptr;
  }
  return j.dump(2) + "\n";
}

}  // namespace redraw
