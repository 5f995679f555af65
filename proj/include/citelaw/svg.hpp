#pragma once

// Minimal self-contained SVG charts: axes with decade (log) or linear ticks,
// scatter points, polylines, square markers and histogram bars.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citelaw/distfit.hpp"
#include "citelaw/rankfit.hpp"

namespace citelaw::svg {

struct Axis {
  std::string label;
  bool log = false;
};

struct Point {
  double x;
  double y;
};

class Figure {
 public:
  Figure(std::string title, Axis x, Axis y);

  void add_points(std::vector<Point> pts, std::string color, double radius = 1.5);
  void add_markers(std::vector<Point> pts, std::string color, double size = 7.0);
  void add_line(std::vector<Point> pts, std::string color, bool dashed = false);
  void add_legend(std::string text, std::string color);

  [[nodiscard]] std::string render() const;

 private:
  enum class Kind { points, markers, line };
  struct Layer {
    Kind kind;
    std::vector<Point> pts;
    std::string color;
    double size;
    bool dashed;
  };

  std::string title_;
  Axis x_;
  Axis y_;
  std::vector<Layer> layers_;
  std::vector<std::pair<std::string, std::string>> legend_;
};

[[nodiscard]] std::string escape(const std::string& text);

// Log-log local vs global rank with an optional fitted line and square
// markers at (floor(x N / 100), P_top x%) for each percentile.
[[nodiscard]] std::string double_rank_chart(const std::string& title, const DoubleRankSeries& series,
                                            const std::optional<PowerLawFit>& fit,
                                            std::span<const double> percents);

// Overlaid bar heights per log bin, one colour per series.
[[nodiscard]] std::string histogram_chart(const std::string& title,
                                          const std::vector<std::pair<std::string, ScaledHistogram>>& series);

[[nodiscard]] std::string npp_chart(const std::string& title, const NppSeries& series);

}  // namespace citelaw::svg
