#include "svg_plot.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace jspin::tools {

namespace {

constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 28.0;
constexpr double kMarginBottom = 48.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Tick spacing of the form {1,2,5} x 10^k covering the range with ~6 steps.
double nice_step(double range) {
  if (range <= 0) return 1.0;
  const double raw = range / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac <= 1.0) return mag;
  if (frac <= 2.0) return 2.0 * mag;
  if (frac <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

std::string style_attrs(const LineStyle& s) {
  std::string out = "stroke=\"" + s.stroke + "\" stroke-width=\"" + num(s.width) +
                    "\" fill=\"none\"";
  if (!s.dash.empty()) {
    out += " stroke-dasharray=\"" + s.dash + "\"";
  }
  return out;
}

}  // namespace

SvgCanvas::SvgCanvas(double width_px, double height_px) : width_(width_px), height_(height_px) {}

void SvgCanvas::set_view(double xmin, double xmax, double ymin, double ymax, bool equal_aspect) {
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  if (equal_aspect) {
    const double plot_w = width_ - kMarginLeft - kMarginRight;
    const double plot_h = height_ - kMarginTop - kMarginBottom;
    const double sx = plot_w / (xmax - xmin);
    const double sy = plot_h / (ymax - ymin);
    if (sx < sy) {
      const double extra = (plot_h / sx - (ymax - ymin)) / 2.0;
      ymin -= extra;
      ymax += extra;
    } else {
      const double extra = (plot_w / sy - (xmax - xmin)) / 2.0;
      xmin -= extra;
      xmax += extra;
    }
  }
  xmin_ = xmin;
  xmax_ = xmax;
  ymin_ = ymin;
  ymax_ = ymax;
}

double SvgCanvas::px(double x) const {
  return kMarginLeft + (x - xmin_) / (xmax_ - xmin_) * (width_ - kMarginLeft - kMarginRight);
}

double SvgCanvas::py(double y) const {
  return kMarginTop + (ymax_ - y) / (ymax_ - ymin_) * (height_ - kMarginTop - kMarginBottom);
}

void SvgCanvas::add_polyline(const std::vector<std::pair<double, double>>& points,
                             const LineStyle& style) {
  if (points.empty()) return;
  std::string d = "<polyline points=\"";
  for (const auto& [x, y] : points) {
    d += num(px(x)) + "," + num(py(y)) + " ";
  }
  d.pop_back();
  d += "\" " + style_attrs(style) + "/>";
  shapes_.push_back(std::move(d));
}

void SvgCanvas::add_marker(double x, double y, double radius_px, const std::string& fill) {
  shapes_.push_back("<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"" +
                    num(radius_px) + "\" fill=\"" + fill + "\"/>");
}

void SvgCanvas::add_ellipse(double cx, double cy, double semi_x, double semi_y, double angle_rad,
                            const LineStyle& style) {
  const double scale = (width_ - kMarginLeft - kMarginRight) / (xmax_ - xmin_);
  const double deg = -angle_rad * 180.0 / std::numbers::pi;  // screen y points down
  shapes_.push_back("<ellipse cx=\"" + num(px(cx)) + "\" cy=\"" + num(py(cy)) + "\" rx=\"" +
                    num(semi_x * scale) + "\" ry=\"" + num(semi_y * scale) + "\" transform=\"rotate(" +
                    num(deg) + " " + num(px(cx)) + " " + num(py(cy)) + ")\" " +
                    style_attrs(style) + "/>");
}

void SvgCanvas::add_legend_entry(const std::string& label, const LineStyle& style) {
  legend_.emplace_back(label, style);
}

void SvgCanvas::set_labels(std::string x_label, std::string y_label, std::string title) {
  x_label_ = std::move(x_label);
  y_label_ = std::move(y_label);
  title_ = std::move(title);
}

std::string SvgCanvas::render() const {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(width_) << " "
      << num(height_) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_)
      << "\" fill=\"white\"/>\n";

  // Frame.
  out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop) << "\" width=\""
      << num(width_ - kMarginLeft - kMarginRight) << "\" height=\""
      << num(height_ - kMarginTop - kMarginBottom)
      << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

  // Ticks.
  const double xstep = nice_step(xmax_ - xmin_);
  for (double x = std::ceil(xmin_ / xstep) * xstep; x <= xmax_ + 1e-9 * xstep; x += xstep) {
    out << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(height_ - kMarginBottom)
        << "\" x2=\"" << num(px(x)) << "\" y2=\"" << num(height_ - kMarginBottom + 5)
        << "\" stroke=\"#888888\"/>\n";
    out << "<text x=\"" << num(px(x)) << "\" y=\"" << num(height_ - kMarginBottom + 18)
        << "\" text-anchor=\"middle\">" << tick_label(x) << "</text>\n";
  }
  const double ystep = nice_step(ymax_ - ymin_);
  for (double y = std::ceil(ymin_ / ystep) * ystep; y <= ymax_ + 1e-9 * ystep; y += ystep) {
    out << "<line x1=\"" << num(kMarginLeft - 5) << "\" y1=\"" << num(py(y)) << "\" x2=\""
        << num(kMarginLeft) << "\" y2=\"" << num(py(y)) << "\" stroke=\"#888888\"/>\n";
    out << "<text x=\"" << num(kMarginLeft - 8) << "\" y=\"" << num(py(y) + 4)
        << "\" text-anchor=\"end\">" << tick_label(y) << "</text>\n";
  }

  if (!title_.empty()) {
    out << "<text x=\"" << num(width_ / 2) << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
        << title_ << "</text>\n";
  }
  if (!x_label_.empty()) {
    out << "<text x=\"" << num((kMarginLeft + width_ - kMarginRight) / 2) << "\" y=\""
        << num(height_ - 10) << "\" text-anchor=\"middle\">" << x_label_ << "</text>\n";
  }
  if (!y_label_.empty()) {
    out << "<text x=\"16\" y=\"" << num((kMarginTop + height_ - kMarginBottom) / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << num((kMarginTop + height_ - kMarginBottom) / 2) << ")\">" << y_label_ << "</text>\n";
  }

  out << "<clipPath id=\"plot\"><rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop)
      << "\" width=\"" << num(width_ - kMarginLeft - kMarginRight) << "\" height=\""
      << num(height_ - kMarginTop - kMarginBottom) << "\"/></clipPath>\n";
  out << "<g clip-path=\"url(#plot)\">\n";
  for (const auto& s : shapes_) {
    out << s << "\n";
  }
  out << "</g>\n";

  double ly = kMarginTop + 14.0;
  for (const auto& [label, style] : legend_) {
    const double lx = width_ - kMarginRight - 150.0;
    out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 28)
        << "\" y2=\"" << num(ly - 4) << "\" " << style_attrs(style) << "/>\n";
    out << "<text x=\"" << num(lx + 34) << "\" y=\"" << num(ly) << "\">" << label << "</text>\n";
    ly += 18.0;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace jspin::tools
