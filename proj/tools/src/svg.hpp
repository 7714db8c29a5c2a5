#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "galikit/types.hpp"

namespace galikit::tools {

/// Bare-bones SVG scatter/line plot. Shapes are collected in data
/// coordinates; save() fits them into a fixed viewport and writes a
/// self-contained file, so no display is required anywhere.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void polyline(const std::vector<Eigen::Vector2d>& points,
                const std::string& color);
  void marker(const Eigen::Vector2d& at, const std::string& color);
  void arrow(const Eigen::Vector2d& from, const Eigen::Vector2d& to,
             const std::string& color);

  /// 1-sigma ellipse of a 2x2 covariance, optionally scaled.
  void covariance_ellipse(const Eigen::Vector2d& center, const Eigen::Matrix2d& cov,
                          const std::string& color, double scale = 1.0);

  void save(const std::filesystem::path& path) const;

 private:
  struct Polyline {
    std::vector<Eigen::Vector2d> points;
    std::string color;
    bool closed = false;
  };
  struct Marker {
    Eigen::Vector2d at;
    std::string color;
  };
  struct Arrow {
    Eigen::Vector2d from, to;
    std::string color;
  };

  void include_point(const Eigen::Vector2d& p);

  std::string title_, x_label_, y_label_;
  std::vector<Polyline> polylines_;
  std::vector<Marker> markers_;
  std::vector<Arrow> arrows_;
  double min_x_ = 1e300, max_x_ = -1e300, min_y_ = 1e300, max_y_ = -1e300;
};

}  // namespace galikit::tools
