#include "svg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <utility>

#include "csv.hpp"

namespace galikit::tools {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgPlot::include_point(const Eigen::Vector2d& p) {
  min_x_ = std::min(min_x_, p.x());
  max_x_ = std::max(max_x_, p.x());
  min_y_ = std::min(min_y_, p.y());
  max_y_ = std::max(max_y_, p.y());
}

void SvgPlot::polyline(const std::vector<Eigen::Vector2d>& points,
                       const std::string& color) {
  for (const auto& p : points) include_point(p);
  polylines_.push_back({points, color, false});
}

void SvgPlot::marker(const Eigen::Vector2d& at, const std::string& color) {
  include_point(at);
  markers_.push_back({at, color});
}

void SvgPlot::arrow(const Eigen::Vector2d& from, const Eigen::Vector2d& to,
                    const std::string& color) {
  include_point(from);
  include_point(to);
  arrows_.push_back({from, to, color});
}

void SvgPlot::covariance_ellipse(const Eigen::Vector2d& center,
                                 const Eigen::Matrix2d& cov,
                                 const std::string& color, double scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(0.5 * (cov + cov.transpose()));
  const double a = scale * std::sqrt(std::max(0.0, eig.eigenvalues()(1)));
  const double b = scale * std::sqrt(std::max(0.0, eig.eigenvalues()(0)));
  const Eigen::Vector2d major = eig.eigenvectors().col(1);
  const Eigen::Vector2d minor = eig.eigenvectors().col(0);

  Polyline ring;
  ring.color = color;
  ring.closed = true;
  for (int i = 0; i <= 72; ++i) {
    const double ang = 2.0 * M_PI * static_cast<double>(i) / 72.0;
    ring.points.push_back(center + a * std::cos(ang) * major +
                          b * std::sin(ang) * minor);
  }
  for (const auto& p : ring.points) include_point(p);
  polylines_.push_back(std::move(ring));
}

void SvgPlot::save(const std::filesystem::path& path) const {
  double lo_x = min_x_, hi_x = max_x_, lo_y = min_y_, hi_y = max_y_;
  if (lo_x > hi_x) {
    lo_x = -1.0;
    hi_x = 1.0;
    lo_y = -1.0;
    hi_y = 1.0;
  }
  if (hi_x - lo_x < 1e-12) {
    lo_x -= 1.0;
    hi_x += 1.0;
  }
  if (hi_y - lo_y < 1e-12) {
    lo_y -= 1.0;
    hi_y += 1.0;
  }
  const double sx = (kWidth - 2.0 * kMargin) / (hi_x - lo_x);
  const double sy = (kHeight - 2.0 * kMargin) / (hi_y - lo_y);
  const double s = std::min(sx, sy);  // equal aspect
  const auto px = [&](const Eigen::Vector2d& p) {
    return Eigen::Vector2d(kMargin + (p.x() - lo_x) * s,
                           kHeight - kMargin - (p.y() - lo_y) * s);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + title_ +
         "</text>\n";
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + x_label_ + "</text>\n";
  out += "<text x=\"16\" y=\"" + num(kHeight / 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
         num(kHeight / 2) + ")\">" + y_label_ + "</text>\n";

  for (const auto& line : polylines_) {
    out += line.closed ? "<polygon" : "<polyline";
    out += " fill=\"none\" stroke=\"" + line.color + "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : line.points) {
      const Eigen::Vector2d q = px(p);
      out += num(q.x()) + "," + num(q.y()) + " ";
    }
    out += "\"/>\n";
  }
  for (const auto& m : markers_) {
    const Eigen::Vector2d q = px(m.at);
    out += "<circle cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) +
           "\" r=\"4\" fill=\"" + m.color + "\"/>\n";
  }
  for (const auto& a : arrows_) {
    const Eigen::Vector2d f = px(a.from);
    const Eigen::Vector2d t = px(a.to);
    out += "<line x1=\"" + num(f.x()) + "\" y1=\"" + num(f.y()) + "\" x2=\"" +
           num(t.x()) + "\" y2=\"" + num(t.y()) + "\" stroke=\"" + a.color +
           "\" stroke-width=\"2\"/>\n";
    // Simple arrowhead.
    const Eigen::Vector2d dir = (t - f).normalized();
    const Eigen::Vector2d side(-dir.y(), dir.x());
    const Eigen::Vector2d w1 = t - 8.0 * dir + 4.0 * side;
    const Eigen::Vector2d w2 = t - 8.0 * dir - 4.0 * side;
    out += "<polyline fill=\"none\" stroke=\"" + a.color + "\" stroke-width=\"2\" points=\"" +
           num(w1.x()) + "," + num(w1.y()) + " " + num(t.x()) + "," + num(t.y()) +
           " " + num(w2.x()) + "," + num(w2.y()) + "\"/>\n";
  }
  out += "</svg>\n";

  std::FILE* f = std::fopen(path.string().c_str(), "wb");
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  const bool ok = std::fwrite(out.data(), 1, out.size(), f) == out.size();
  std::fclose(f);
  if (!ok) throw IoError("write failure on " + path.string());
}

}  // namespace galikit::tools
