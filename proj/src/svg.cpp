#include "stirap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace stirap {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 72, kRight = 24, kTop = 44, kBottom = 58;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Largest {1, 2, 2.5, 5} x 10^k not exceeding the raw spacing.
double nice_step(double range, int target) {
  const double raw = range / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {5.0, 2.5, 2.0, 1.0})
    if (m * mag <= raw) return m * mag;
  return mag;
}

}  // namespace

std::string LineChart::render() const {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (log_x && !(x > 0))
        throw std::invalid_argument("log-scale chart requires positive x values");
      const double xv = log_x ? std::log10(x) : x;
      x_min = std::min(x_min, xv);
      x_max = std::max(x_max, xv);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (!(x_max >= x_min)) throw std::invalid_argument("chart has no data");
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;
  const double y_pad = 0.04 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto px = [&](double xv) { return kLeft + (xv - x_min) / (x_max - x_min) * pw; };
  const auto py = [&](double yv) { return kTop + (y_max - yv) / (y_max - y_min) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
         num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";

  // Ticks and grid.
  std::vector<double> xticks;
  if (log_x) {
    for (int k = (int)std::ceil(x_min - 1e-9); k <= (int)std::floor(x_max + 1e-9); ++k)
      xticks.push_back(k);
  } else {
    const double step = nice_step(x_max - x_min, 6);
    for (double v = std::ceil(x_min / step - 1e-9) * step; v <= x_max + 1e-9; v += step)
      xticks.push_back(v);
  }
  const double ystep = nice_step(y_max - y_min, 6);
  std::vector<double> yticks;
  for (double v = std::ceil(y_min / ystep - 1e-9) * ystep; v <= y_max + 1e-9; v += ystep)
    yticks.push_back(v);

  for (double v : xticks) {
    const double x = px(v);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kTop + ph) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           (log_x ? ("1e" + tick_text(v)) : tick_text(v)) + "</text>\n";
  }
  for (double v : yticks) {
    const double y = py(v);
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(kLeft + pw) + "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           tick_text(std::abs(v) < 1e-12 * ystep ? 0.0 : v) + "</text>\n";
  }

  // Axes.
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
         x_label + "</text>\n";
  svg += "<text x=\"18\" y=\"" + num(kTop + ph / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 18 " + num(kTop + ph / 2) + ")\">" + y_label +
         "</text>\n";

  // Data.
  for (const auto& s : series) {
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.8\"";
    if (s.dashed) svg += " stroke-dasharray=\"6 4\"";
    svg += " points=\"";
    for (const auto& [x, y] : s.points) {
      svg += num(px(log_x ? std::log10(x) : x));
      svg += ',';
      svg += num(py(y));
      svg += ' ';
    }
    svg += "\"/>\n";
  }

  // Legend.
  double ly = kTop + 14;
  for (const auto& s : series) {
    const double lx = kLeft + pw - 200;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(lx + 28) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"1.8\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") +
           "/>\n";
    svg += "<text x=\"" + num(lx + 34) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + s.label + "</text>\n";
    ly += 18;
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace stirap
