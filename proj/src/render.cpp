#include "fmn/render.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace fmn {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kRadius = 240.0;
constexpr double kLabelRadius = kRadius + 22.0;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v + 0.0);  // +0.0 normalizes -0
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

}  // namespace

const char* node_colour(int label) {
  if (label < 0) return "blue";
  if (label > 0) return "cyan";
  return "black";
}

const char* edge_colour(EdgeClass cls) {
  switch (cls) {
    case EdgeClass::negative: return "red";
    case EdgeClass::positive: return "cyan";
    case EdgeClass::contrastive: return "purple";
    case EdgeClass::neutral: return "black";
  }
  return "black";
}

RenderedFrame render_frame(const SemanticFrame& frame) {
  const double c = kCanvas / 2.0;
  const size_t m = frame.layout.size();
  // A lone target sits in the centre instead of on a degenerate circle.
  const double radius = m <= 1 ? 0.0 : kRadius;

  std::map<std::string, std::pair<double, double>> pos;
  std::map<std::string, const SemanticFrame::LayoutSlot*> slot_of;
  for (const auto& slot : frame.layout) {
    pos[slot.name] = {c + radius * std::cos(slot.angle), c + radius * std::sin(slot.angle)};
    slot_of[slot.name] = &slot;
  }

  std::map<std::string, int> label_of;
  label_of[frame.target] = frame.target_label;
  for (const auto& nb : frame.neighbours) label_of[nb.name] = nb.label;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)kCanvas
      << "\" height=\"" << (int)kCanvas << "\" viewBox=\"0 0 " << (int)kCanvas << " "
      << (int)kCanvas << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  svg << "  <g fill=\"none\" stroke-linecap=\"round\">\n";
  for (const auto& edge : frame.edges) {
    const auto [x1, y1] = pos.at(edge.a);
    const auto [x2, y2] = pos.at(edge.b);
    // Quadratic curve with the control point pulled toward the centre, a
    // lightweight bundled-chord look.
    const double qx = 0.5 * (x1 + x2) + 0.35 * (c - 0.5 * (x1 + x2));
    const double qy = 0.5 * (y1 + y2) + 0.35 * (c - 0.5 * (y1 + y2));
    const double width = 1.0 + 0.6 * std::log2(static_cast<double>(edge.weight));
    svg << "    <path d=\"M " << fixed(x1) << ' ' << fixed(y1) << " Q " << fixed(qx) << ' '
        << fixed(qy) << ' ' << fixed(x2) << ' ' << fixed(y2) << "\" stroke=\""
        << edge_colour(edge.cls) << "\" stroke-width=\"" << fixed(width)
        << "\" stroke-opacity=\"0.75\"/>\n";
  }
  svg << "  </g>\n";

  svg << "  <g font-family=\"sans-serif\" text-anchor=\"middle\">\n";
  for (const auto& slot : frame.layout) {
    const double lr = m <= 1 ? 0.0 : kLabelRadius;
    const double x = c + lr * std::cos(slot.angle);
    const double y = c + lr * std::sin(slot.angle);
    const int label = label_of.count(slot.name) ? label_of.at(slot.name) : 0;
    const double size = 12.0 * slot.font_scale;
    const bool is_target = slot.name == frame.target;
    svg << "    <text x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" fill=\""
        << node_colour(label) << "\" font-size=\"" << fixed(size) << "\"";
    if (is_target) svg << " font-weight=\"bold\"";
    svg << ">" << xml_escape(slot.name) << "</text>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";

  std::ostringstream dot;
  dot << "graph frame {\n";
  dot << "  layout=circo;\n";
  dot << "  node [shape=plaintext];\n";
  for (const auto& slot : frame.layout) {
    const int label = label_of.count(slot.name) ? label_of.at(slot.name) : 0;
    dot << "  \"" << slot.name << "\" [fontcolor=" << node_colour(label)
        << ", fontsize=" << fixed(12.0 * slot.font_scale) << "];\n";
  }
  for (const auto& edge : frame.edges) {
    dot << "  \"" << edge.a << "\" -- \"" << edge.b << "\" [color=" << edge_colour(edge.cls)
        << ", penwidth=" << fixed(1.0 + 0.6 * std::log2(static_cast<double>(edge.weight)))
        << "];\n";
  }
  dot << "}\n";

  return {svg.str(), dot.str()};
}

}  // namespace fmn
