#pragma once

#include <string>

#include "flatpunct/metric.hpp"
#include "flatpunct/moves.hpp"

namespace flatpunct {

struct SvgOptions {
  double scale = 100.0;  // SVG units per unit of length
  int ghosts = 2;        // copies moved by the closing holonomy, each way
  bool labels = true;    // curvature labels at the vertices
};

// SVG 1.1 drawing of the developed boundary. When `overlay` is given its
// tri-cuts are replayed and each removed triangle is drawn in the frame of
// the metric it was cut from. Output is byte-stable for equal input.
std::string render_svg(const FlatDiskMetric& metric, const ModificationPlan* overlay = nullptr,
                       const SvgOptions& options = {});

}  // namespace flatpunct
