#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qmoat/delaunay.hpp"
#include "qmoat/lattice_region.hpp"

namespace qmoat::svg {

/// Fixed-precision number text, so repeated runs emit identical bytes.
inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

inline std::string escape(std::string_view text) {
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

/// Minimal SVG 1.1 writer.
class Document {
 public:
  Document(double width, double height) : width_(width), height_(height) {}

  void comment(std::string_view text) {
    std::string safe(text);
    // "--" is not allowed inside XML comments
    for (std::size_t p; (p = safe.find("--")) != std::string::npos;) safe.replace(p, 2, "- -");
    body_ << "<!-- " << safe << " -->\n";
  }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1,
            std::string_view dash = {}) {
    body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"";
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << "/>\n";
  }

  void circle(double cx, double cy, double r, std::string_view fill) {
    body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\"" << fill
          << "\"/>\n";
  }

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none") {
    body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
          << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke, double width = 1) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k) body_ << ' ';
      body_ << num(pts[k].first) << ',' << num(pts[k].second);
    }
    body_ << "\"/>\n";
  }

  void text(double x, double y, std::string_view content, double size = 12, std::string_view anchor = "start",
            double rotate = 0) {
    body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\""
          << num(size) << "\" text-anchor=\"" << anchor << "\"";
    if (rotate != 0) body_ << " transform=\"rotate(" << num(rotate) << ' ' << num(x) << ' ' << num(y) << ")\"";
    body_ << '>' << escape(content) << "</text>\n";
  }

  std::string str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width_) << "\" height=\""
        << num(height_) << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  double width_;
  double height_;
  std::ostringstream body_;
};

/// Linear map from data coordinates to a pixel box (y grows upward in data).
struct Frame {
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  double left = 60, top = 20, width = 500, height = 500;

  double px(double x) const { return left + (x - x_min) / (x_max - x_min) * width; }
  double py(double y) const { return top + height - (y - y_min) / (y_max - y_min) * height; }
};

namespace detail {

inline Frame fit_points(std::span<const ScaledPoint> pts, double size) {
  Frame fr;
  fr.left = fr.top = 20;
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  for (const auto& p : pts) {
    x_lo = std::min(x_lo, p.x());
    x_hi = std::max(x_hi, p.x());
    y_lo = std::min(y_lo, p.y());
    y_hi = std::max(y_hi, p.y());
  }
  const double span = std::max(x_hi - x_lo, y_hi - y_lo);
  fr.x_min = x_lo;
  fr.x_max = x_lo + span;
  fr.y_min = y_lo;
  fr.y_max = y_lo + span;
  fr.width = fr.height = size;
  return fr;
}

}  // namespace detail

/// Embedded primes as dots.
inline std::string prime_scatter(std::span<const ScaledPoint> pts, std::string_view title = {}, double size = 600) {
  const Frame fr = detail::fit_points(pts, size);
  Document doc(size + 40, size + 40);
  if (!title.empty()) doc.comment(title);
  doc.rect(0, 0, size + 40, size + 40, "white");
  const double r = std::clamp(size / (4 * std::sqrt(static_cast<double>(pts.size()) + 1)), 0.6, 4.0);
  for (const auto& p : pts) doc.circle(fr.px(p.x()), fr.py(p.y()), r, "black");
  return doc.str();
}

/// Triangulation edges dashed, spanning tree edges solid.
inline std::string triangulation_overlay(std::span<const ScaledPoint> pts, std::span<const WeightedEdge> edges,
                                         std::span<const WeightedEdge> tree, std::string_view title = {},
                                         double size = 600) {
  const Frame fr = detail::fit_points(pts, size);
  Document doc(size + 40, size + 40);
  if (!title.empty()) doc.comment(title);
  doc.rect(0, 0, size + 40, size + 40, "white");
  for (const auto& e : edges) {
    doc.line(fr.px(pts[e.i].x()), fr.py(pts[e.i].y()), fr.px(pts[e.j].x()), fr.py(pts[e.j].y()), "#888888", 0.6,
             "3,2");
  }
  for (const auto& e : tree) {
    doc.line(fr.px(pts[e.i].x()), fr.py(pts[e.i].y()), fr.px(pts[e.j].x()), fr.py(pts[e.j].y()), "black", 1.4);
  }
  for (const auto& p : pts) doc.circle(fr.px(p.x()), fr.py(p.y()), 2, "black");
  return doc.str();
}

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  ///< (k, farthest distance)
};

/// Step bound k on the x-axis against farthest distance reached, one line per series.
inline std::string moat_plot(std::span<const Series> series, std::string_view title = {}) {
  double x_max = 1, y_max = 1;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_max = std::max(x_max, x);
      y_max = std::max(y_max, y);
    }
  }
  x_max = std::ceil(x_max + 0.5);
  const double y_step = std::pow(10.0, std::floor(std::log10(y_max)));
  y_max = std::ceil(y_max * 1.05 / y_step) * y_step;

  Frame fr;
  fr.left = 80;
  fr.top = 30;
  fr.width = 560;
  fr.height = 400;
  fr.x_max = x_max;
  fr.y_max = y_max;
  Document doc(fr.left + fr.width + 30, fr.top + fr.height + 60);
  if (!title.empty()) doc.comment(title);
  doc.rect(0, 0, fr.left + fr.width + 30, fr.top + fr.height + 60, "white");

  const int y_ticks = 8;
  for (int t = 0; t <= y_ticks; ++t) {
    const double y = y_max * t / y_ticks;
    doc.line(fr.px(0), fr.py(y), fr.px(x_max), fr.py(y), "#cccccc", 0.8, "4,3");
    doc.text(fr.px(0) - 6, fr.py(y) + 4, num(y), 11, "end");
  }
  for (int x = 0; x <= static_cast<int>(x_max); ++x) {
    doc.line(fr.px(x), fr.py(0), fr.px(x), fr.py(0) + 5, "black");
    doc.text(fr.px(x), fr.py(0) + 18, std::to_string(x), 11, "middle");
  }
  doc.line(fr.px(0), fr.py(0), fr.px(x_max), fr.py(0), "black");
  doc.line(fr.px(0), fr.py(0), fr.px(0), fr.py(y_max), "black");
  doc.text(fr.left + fr.width / 2, fr.top + fr.height + 45, "Step size bound k", 13, "middle");
  doc.text(22, fr.top + fr.height / 2, "Farthest distance reachable", 13, "middle", -90);

  for (std::size_t s = 0; s < series.size(); ++s) {
    std::vector<std::pair<double, double>> pix;
    for (const auto& [x, y] : series[s].points) pix.emplace_back(fr.px(x), fr.py(y));
    doc.polyline(pix, series[s].color, 1.5);
    for (const auto& [x, y] : pix) doc.rect(x - 3, y - 3, 6, 6, "none", series[s].color);
    const double ly = fr.top + 14 + 18 * static_cast<double>(s);
    doc.line(fr.left + 12, ly - 4, fr.left + 36, ly - 4, series[s].color, 1.5);
    doc.text(fr.left + 42, ly, series[s].label, 12);
  }
  return doc.str();
}

}  // namespace qmoat::svg
