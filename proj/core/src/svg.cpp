#include "rearrange/svg.hpp"

#include <cstdio>
#include <string>

namespace rearrange {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Canvas {
public:
  Canvas(const Workspace& ws, const SvgStyle& style) : ws_(ws), style_(style) {}

  double x(double meters) const { return style_.margin_px + (meters - ws_.x_min) * style_.pixels_per_meter; }
  double y(double meters) const { return style_.margin_px + (ws_.y_max - meters) * style_.pixels_per_meter; }
  double len(double meters) const { return meters * style_.pixels_per_meter; }
  double width() const { return 2.0 * style_.margin_px + len(ws_.width()); }
  double height() const { return 2.0 * style_.margin_px + len(ws_.height()); }

private:
  Workspace ws_;
  SvgStyle style_;
};

}  // namespace

std::string render_svg(const Instance& inst, const Arrangement& objects, const Plan& motions,
                       const SvgStyle& style) {
  const Canvas cv(inst.workspace, style);
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(cv.width()) + "\" height=\"" +
       num(cv.height()) + "\" viewBox=\"0 0 " + num(cv.width()) + " " + num(cv.height()) + "\">\n";
  s += "  <defs>\n"
       "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
       "markerHeight=\"6\" orient=\"auto-start-reverse\">\n"
       "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c0392b\"/>\n"
       "    </marker>\n"
       "  </defs>\n";
  s += "  <rect class=\"workspace\" x=\"" + num(cv.x(inst.workspace.x_min)) + "\" y=\"" +
       num(cv.y(inst.workspace.y_max)) + "\" width=\"" + num(cv.len(inst.workspace.width())) +
       "\" height=\"" + num(cv.len(inst.workspace.height())) +
       "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";

  const std::string r = num(cv.len(inst.radius));
  for (std::size_t i = 0; i < inst.target.size(); ++i) {
    const Point2 t = inst.target[i];
    s += "  <circle class=\"target\" cx=\"" + num(cv.x(t.x)) + "\" cy=\"" + num(cv.y(t.y)) +
         "\" r=\"" + r + "\" fill=\"none\" stroke=\"#2e86c1\" stroke-dasharray=\"3 2\"/>\n";
    s += "  <text class=\"target-label\" x=\"" + num(cv.x(t.x)) + "\" y=\"" + num(cv.y(t.y)) +
         "\" font-size=\"10\" fill=\"#2e86c1\" text-anchor=\"middle\" dominant-baseline=\"central\">T" +
         std::to_string(i) + "</text>\n";
  }
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const Point2 p = objects[i];
    s += "  <circle class=\"object\" cx=\"" + num(cv.x(p.x)) + "\" cy=\"" + num(cv.y(p.y)) +
         "\" r=\"" + r + "\" fill=\"#bbbbbb\" fill-opacity=\"0.7\" stroke=\"#555555\"/>\n";
    s += "  <text class=\"object-label\" x=\"" + num(cv.x(p.x)) + "\" y=\"" + num(cv.y(p.y)) +
         "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"central\">" +
         std::to_string(i) + "</text>\n";
  }
  for (std::size_t i = 0; i < motions.size(); ++i) {
    const Motion& m = motions[i];
    s += "  <line class=\"motion\" data-step=\"" + std::to_string(i) + "\" data-object=\"" +
         std::to_string(m.object) + "\" x1=\"" + num(cv.x(m.pick.x)) + "\" y1=\"" +
         num(cv.y(m.pick.y)) + "\" x2=\"" + num(cv.x(m.place.x)) + "\" y2=\"" +
         num(cv.y(m.place.y)) + "\" stroke=\"#c0392b\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace rearrange
