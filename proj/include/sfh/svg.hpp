#pragma once

// Minimal deterministic SVG line charts: panels side by side, each with a
// frame, min/max tick labels and one polyline per series.

#include <string>
#include <vector>

namespace sfh {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
  bool equal_aspect = false;
};

std::string render_svg(const std::vector<Panel>& panels, int panel_width = 420, int panel_height = 320);

/// printf("%.17g"): round-trip exact and byte-stable.
std::string format_number(double v);

}  // namespace sfh
