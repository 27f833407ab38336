#include "sfh/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sfh {
namespace {

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_svg(const std::vector<Panel>& panels, int panel_width, int panel_height) {
  const int margin_l = 60, margin_r = 20, margin_t = 30, margin_b = 45;
  const int width = panel_width * static_cast<int>(std::max<std::size_t>(1, panels.size()));
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << panel_height
     << "\" viewBox=\"0 0 " << width << ' ' << panel_height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double x0 = static_cast<double>(p) * panel_width + margin_l;
    const double y0 = margin_t;
    double w = panel_width - margin_l - margin_r;
    double h = panel_height - margin_t - margin_b;
    Range rx, ry;
    for (const Series& s : panel.series) {
      for (double v : s.x) rx.add(v);
      for (double v : s.y) ry.add(v);
    }
    rx.pad();
    ry.pad();
    double sx = w / (rx.hi - rx.lo);
    double sy = h / (ry.hi - ry.lo);
    double ox = x0, oy = y0;
    if (panel.equal_aspect) {
      const double s = std::min(sx, sy);
      ox += 0.5 * (w - s * (rx.hi - rx.lo));
      oy += 0.5 * (h - s * (ry.hi - ry.lo));
      sx = sy = s;
      w = s * (rx.hi - rx.lo);
      h = s * (ry.hi - ry.lo);
    }
    auto X = [&](double v) { return ox + (v - rx.lo) * sx; };
    auto Y = [&](double v) { return oy + h - (v - ry.lo) * sy; };

    os << "<g>\n";
    os << "<text x=\"" << fmt("%.1f", x0 + 0.5 * (panel_width - margin_l - margin_r)) << "\" y=\"18\" text-anchor=\"middle\">"
       << escape(panel.title) << "</text>\n";
    os << "<rect x=\"" << fmt("%.2f", ox) << "\" y=\"" << fmt("%.2f", oy) << "\" width=\"" << fmt("%.2f", w)
       << "\" height=\"" << fmt("%.2f", h) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    // Zero axes when they fall inside the frame.
    if (rx.lo < 0.0 && rx.hi > 0.0) {
      os << "<line x1=\"" << fmt("%.2f", X(0)) << "\" y1=\"" << fmt("%.2f", oy) << "\" x2=\"" << fmt("%.2f", X(0))
         << "\" y2=\"" << fmt("%.2f", oy + h) << "\" stroke=\"#bbb\"/>\n";
    }
    if (ry.lo < 0.0 && ry.hi > 0.0) {
      os << "<line x1=\"" << fmt("%.2f", ox) << "\" y1=\"" << fmt("%.2f", Y(0)) << "\" x2=\"" << fmt("%.2f", ox + w)
         << "\" y2=\"" << fmt("%.2f", Y(0)) << "\" stroke=\"#bbb\"/>\n";
    }
    os << "<text x=\"" << fmt("%.2f", ox) << "\" y=\"" << fmt("%.2f", oy + h + 14) << "\">" << fmt("%.4g", rx.lo)
       << "</text>\n";
    os << "<text x=\"" << fmt("%.2f", ox + w) << "\" y=\"" << fmt("%.2f", oy + h + 14) << "\" text-anchor=\"end\">"
       << fmt("%.4g", rx.hi) << "</text>\n";
    os << "<text x=\"" << fmt("%.2f", ox - 4) << "\" y=\"" << fmt("%.2f", oy + h) << "\" text-anchor=\"end\">"
       << fmt("%.4g", ry.lo) << "</text>\n";
    os << "<text x=\"" << fmt("%.2f", ox - 4) << "\" y=\"" << fmt("%.2f", oy + 10) << "\" text-anchor=\"end\">"
       << fmt("%.4g", ry.hi) << "</text>\n";
    os << "<text x=\"" << fmt("%.2f", ox + 0.5 * w) << "\" y=\"" << fmt("%.2f", oy + h + 30)
       << "\" text-anchor=\"middle\">" << escape(panel.xlabel) << "</text>\n";
    os << "<text x=\"" << fmt("%.2f", ox - 44) << "\" y=\"" << fmt("%.2f", oy + 0.5 * h) << "\" text-anchor=\"middle\""
       << " transform=\"rotate(-90 " << fmt("%.2f", ox - 44) << ' ' << fmt("%.2f", oy + 0.5 * h) << ")\">"
       << escape(panel.ylabel) << "</text>\n";
    for (std::size_t k = 0; k < panel.series.size(); ++k) {
      const Series& s = panel.series[k];
      const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
      const std::size_t m = std::min(s.x.size(), s.y.size());
      for (std::size_t i = 0; i < m; ++i) {
        if (i) os << ' ';
        os << fmt("%.2f", X(s.x[i])) << ',' << fmt("%.2f", Y(s.y[i]));
      }
      os << "\"/>\n";
      if (!s.label.empty()) {
        os << "<text x=\"" << fmt("%.2f", ox + w - 4) << "\" y=\"" << fmt("%.2f", oy + 14 + 13.0 * k)
           << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(s.label) << "</text>\n";
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace sfh
