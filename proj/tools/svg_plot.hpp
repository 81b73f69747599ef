#pragma once

#include <string>
#include <utility>
#include <vector>

namespace jspin::tools {

struct LineStyle {
  std::string stroke = "#222222";
  double width = 1.5;
  std::string dash;  // e.g. "6,4"; empty for solid
};

/// Minimal self-contained SVG chart: axes with ticks, polylines, markers,
/// rotated ellipses and a legend. All coordinates are data coordinates;
/// output is deterministic.
class SvgCanvas {
 public:
  SvgCanvas(double width_px, double height_px);

  /// Data ranges. When `equal_aspect` is set the ranges are padded so one
  /// data unit spans the same number of pixels on both axes (required for
  /// ellipse rendering).
  void set_view(double xmin, double xmax, double ymin, double ymax, bool equal_aspect = false);

  void add_polyline(const std::vector<std::pair<double, double>>& points, const LineStyle& style);
  void add_marker(double x, double y, double radius_px, const std::string& fill);
  void add_ellipse(double cx, double cy, double semi_x, double semi_y, double angle_rad,
                   const LineStyle& style);
  void add_legend_entry(const std::string& label, const LineStyle& style);
  void set_labels(std::string x_label, std::string y_label, std::string title);

  std::string render() const;

 private:
  double width_, height_;
  double xmin_ = 0, xmax_ = 1, ymin_ = 0, ymax_ = 1;
  std::string x_label_, y_label_, title_;
  std::vector<std::string> shapes_;
  std::vector<std::pair<std::string, LineStyle>> legend_;

  double px(double x) const;
  double py(double y) const;
};

}  // namespace jspin::tools
