#pragma once

#include <string>

#include "rearrange/arrangement.hpp"

namespace rearrange {

struct SvgStyle {
  double pixels_per_meter = 1000.0;
  double margin_px = 20.0;
};

/// Dashed workspace outline, target positions as outlined circles, objects
/// as grey discs labelled with their index, and one arrow per motion from
/// pick to place. Objects are drawn at `objects` (usually the initial
/// arrangement). The y axis points up.
std::string render_svg(const Instance& inst, const Arrangement& objects, const Plan& motions = {},
                       const SvgStyle& style = {});

inline std::string render_svg(const Instance& inst, const Plan& motions = {},
                              const SvgStyle& style = {}) {
  return render_svg(inst, inst.initial, motions, style);
}

}  // namespace rearrange
