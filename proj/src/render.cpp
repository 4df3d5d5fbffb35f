#include "posegraph/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "posegraph/error.hpp"

namespace posegraph {

using nlohmann::json;

namespace {

constexpr double kMarkerRadiusPerWeight = 5.0;
constexpr double kMargin = 40.0;
constexpr double kLegendHeight = 50.0;

std::string fixed(double value, int digits = 3) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
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

std::string escape_dot(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void check_table(const WeightedPoseGraph& graph, const WeightTable& table) {
  if (table.vertex_weights.size() != graph.vertex_count() ||
      table.edge_weights.size() != graph.edge_count()) {
    throw Error(ErrorKind::kTableMismatch,
                "table has " + std::to_string(table.vertex_weights.size()) + " keypoints and " +
                    std::to_string(table.edge_weights.size()) + " connections, graph has " +
                    std::to_string(graph.vertex_count()) + " and " +
                    std::to_string(graph.edge_count()));
  }
}

/// Maps weights onto [0, 1]; a flat range maps to the middle of the ramp.
struct RampScale {
  double lo;
  double hi;

  explicit RampScale(std::span<const double> weights) {
    const auto s = summarize(weights);
    lo = s.min;
    hi = s.max;
  }
  double operator()(double w) const { return hi > lo ? (w - lo) / (hi - lo) : 0.5; }
};

}  // namespace

Layout parse_layout(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kMalformed, std::string("layout: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("keypoints") || !doc["keypoints"].is_object()) {
    throw Error(ErrorKind::kMalformed, "layout: missing 'keypoints' object");
  }
  Layout layout;
  for (const auto& [name, xy] : doc["keypoints"].items()) {
    if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number()) {
      throw Error(ErrorKind::kMalformed, "layout: position of '" + name + "' is not [x, y]");
    }
    layout.emplace(name, Point2{xy[0].get<double>(), xy[1].get<double>()});
  }
  return layout;
}

Layout force_directed_layout(const WeightedPoseGraph& graph, std::uint32_t seed) {
  const std::size_t n = graph.vertex_count();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point2> pos(n);
  for (auto& p : pos) {
    p.x = unit(rng);
    p.y = unit(rng);
  }
  const double k = std::sqrt(1.0 / static_cast<double>(std::max<std::size_t>(n, 1)));
  double temperature = 0.1;
  constexpr int kIterations = 300;
  std::vector<Point2> shift(n);
  for (int it = 0; it < kIterations; ++it) {
    std::fill(shift.begin(), shift.end(), Point2{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = pos[i].x - pos[j].x;
        const double dy = pos[i].y - pos[j].y;
        const double d = std::max(std::hypot(dx, dy), 1e-9);
        const double f = k * k / d;
        shift[i].x += dx / d * f;
        shift[i].y += dy / d * f;
        shift[j].x -= dx / d * f;
        shift[j].y -= dy / d * f;
      }
    }
    for (const auto& e : graph.skeleton().edges()) {
      const double dx = pos[e.a].x - pos[e.b].x;
      const double dy = pos[e.a].y - pos[e.b].y;
      const double d = std::max(std::hypot(dx, dy), 1e-9);
      const double f = d * d / k;
      shift[e.a].x -= dx / d * f;
      shift[e.a].y -= dy / d * f;
      shift[e.b].x += dx / d * f;
      shift[e.b].y += dy / d * f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::max(std::hypot(shift[i].x, shift[i].y), 1e-9);
      const double step = std::min(d, temperature);
      pos[i].x += shift[i].x / d * step;
      pos[i].y += shift[i].y / d * step;
    }
    temperature *= 0.985;
  }

  double min_x = pos.empty() ? 0.0 : pos[0].x, max_x = min_x;
  double min_y = pos.empty() ? 0.0 : pos[0].y, max_y = min_y;
  for (const auto& p : pos) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  Layout layout;
  for (std::size_t i = 0; i < n; ++i) {
    layout.emplace(graph.skeleton().keypoints()[i].name,
                   Point2{(pos[i].x - min_x) / span * 600.0, (pos[i].y - min_y) / span * 600.0});
  }
  return layout;
}

std::string ramp_color(double t) {
  static constexpr std::array<std::array<double, 3>, 9> kStops{{
      {68, 1, 84}, {71, 44, 122}, {59, 81, 139}, {44, 113, 142}, {33, 144, 141},
      {39, 173, 129}, {92, 200, 99}, {170, 220, 50}, {253, 231, 37},
  }};
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * static_cast<double>(kStops.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(pos), kStops.size() - 2);
  const double f = pos - static_cast<double>(i);
  char buffer[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround(kStops[i][c] + f * (kStops[i + 1][c] - kStops[i][c])));
  }
  std::snprintf(buffer, sizeof buffer, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buffer;
}

double marker_radius(double weight) { return kMarkerRadiusPerWeight * weight; }

std::string emit_dot(const WeightedPoseGraph& graph, const WeightTable& table,
                     std::span<const std::string> metadata) {
  check_table(graph, table);
  const auto& skeleton = graph.skeleton();
  const RampScale vertex_scale(table.vertex_weights);
  const RampScale edge_scale(table.edge_weights);

  std::ostringstream out;
  for (const auto& line : metadata) out << "// " << line << "\n";
  out << "// color ramp: " << kColorRampName << "\n";
  out << "graph \"" << escape_dot(skeleton.name()) << "\" {\n";
  out << "  graph [label=\"scheme: " << escape_dot(table.scheme.name()) << "\"];\n";
  out << "  node [shape=circle, style=filled, fontsize=10];\n";
  for (std::size_t v = 0; v < skeleton.keypoint_count(); ++v) {
    const double w = table.vertex_weights[v];
    out << "  \"" << escape_dot(skeleton.keypoints()[v].name) << "\" [label=\"" << fixed(w)
        << "\", xlabel=\"" << escape_dot(skeleton.keypoints()[v].name) << "\", width="
        << fixed(2.0 * marker_radius(w) / 72.0) << ", fillcolor=\"" << ramp_color(vertex_scale(w))
        << "\"];\n";
  }
  for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
    const auto& def = skeleton.edges()[e];
    const double w = table.edge_weights[e];
    out << "  \"" << escape_dot(skeleton.keypoints()[def.a].name) << "\" -- \""
        << escape_dot(skeleton.keypoints()[def.b].name) << "\" [label=\"" << fixed(w)
        << "\", color=\"" << ramp_color(edge_scale(w)) << "\", penwidth=" << fixed(1.0 + w)
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_svg(const WeightedPoseGraph& graph, const WeightTable& table,
                     const Layout& layout, std::span<const std::string> metadata) {
  check_table(graph, table);
  const auto& skeleton = graph.skeleton();
  std::vector<Point2> pos;
  pos.reserve(skeleton.keypoint_count());
  for (const auto& kp : skeleton.keypoints()) {
    const auto it = layout.find(kp.name);
    if (it == layout.end()) {
      throw Error(ErrorKind::kMissingLayout, "no layout position for keypoint '" + kp.name + "'");
    }
    pos.push_back(it->second);
  }

  double min_x = pos[0].x, max_x = pos[0].x, min_y = pos[0].y, max_y = pos[0].y;
  for (std::size_t v = 0; v < pos.size(); ++v) {
    const double r = marker_radius(table.vertex_weights[v]);
    min_x = std::min(min_x, pos[v].x - r);
    max_x = std::max(max_x, pos[v].x + r);
    min_y = std::min(min_y, pos[v].y - r);
    max_y = std::max(max_y, pos[v].y + r);
  }
  const double width = std::max(max_x - min_x, 200.0) + 2.0 * kMargin;
  const double height = (max_y - min_y) + 2.0 * kMargin + kLegendHeight;
  const double ox = kMargin - min_x;
  const double oy = kMargin - min_y;

  const RampScale vertex_scale(table.vertex_weights);
  const RampScale edge_scale(table.edge_weights);
  const auto vertex_summary = summarize(table.vertex_weights);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 1) << "\" height=\""
      << fixed(height, 1) << "\" viewBox=\"0 0 " << fixed(width, 1) << " " << fixed(height, 1)
      << "\">\n";
  out << "  <metadata>\n";
  for (const auto& line : metadata) out << "    " << escape_xml(line) << "\n";
  out << "    scheme: " << escape_xml(table.scheme.name()) << "\n";
  out << "    color ramp: " << kColorRampName << "\n";
  out << "  </metadata>\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out << "  <g id=\"connections\" stroke-linecap=\"round\">\n";
  for (std::size_t e = 0; e < skeleton.edge_count(); ++e) {
    const auto& def = skeleton.edges()[e];
    const double w = table.edge_weights[e];
    out << "    <line x1=\"" << fixed(pos[def.a].x + ox, 2) << "\" y1=\"" << fixed(pos[def.a].y + oy, 2)
        << "\" x2=\"" << fixed(pos[def.b].x + ox, 2) << "\" y2=\"" << fixed(pos[def.b].y + oy, 2)
        << "\" stroke=\"" << ramp_color(edge_scale(w)) << "\" stroke-width=\"2\"><title>"
        << escape_xml(skeleton.edge_label(e)) << " " << fixed(w) << "</title></line>\n";
  }
  out << "  </g>\n";

  out << "  <g id=\"keypoints\" stroke=\"black\" stroke-width=\"0.5\">\n";
  for (std::size_t v = 0; v < skeleton.keypoint_count(); ++v) {
    const double w = table.vertex_weights[v];
    out << "    <circle cx=\"" << fixed(pos[v].x + ox, 2) << "\" cy=\"" << fixed(pos[v].y + oy, 2)
        << "\" r=\"" << fixed(marker_radius(w), 3) << "\" fill=\"" << ramp_color(vertex_scale(w))
        << "\"><title>" << escape_xml(skeleton.keypoints()[v].name) << " " << fixed(w)
        << "</title></circle>\n";
  }
  out << "  </g>\n";

  const double legend_y = height - kLegendHeight + 10.0;
  const double bar_width = width - 2.0 * kMargin;
  out << "  <defs><linearGradient id=\"ramp\">";
  for (int i = 0; i <= 8; ++i) {
    out << "<stop offset=\"" << fixed(i / 8.0, 3) << "\" stop-color=\"" << ramp_color(i / 8.0)
        << "\"/>";
  }
  out << "</linearGradient></defs>\n";
  out << "  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "    <rect x=\"" << fixed(kMargin, 1) << "\" y=\"" << fixed(legend_y, 1) << "\" width=\""
      << fixed(bar_width, 1) << "\" height=\"12\" fill=\"url(#ramp)\"/>\n";
  out << "    <text x=\"" << fixed(kMargin, 1) << "\" y=\"" << fixed(legend_y + 28.0, 1)
      << "\">min " << fixed(vertex_summary.min) << "</text>\n";
  out << "    <text x=\"" << fixed(kMargin + bar_width, 1) << "\" y=\"" << fixed(legend_y + 28.0, 1)
      << "\" text-anchor=\"end\">max " << fixed(vertex_summary.max) << "</text>\n";
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace posegraph
