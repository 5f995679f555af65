#include "citelaw/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "citelaw/error.hpp"

namespace citelaw::svg {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kLeft = 72;
constexpr double kRight = 24;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Scale {
  bool log;
  double lo;  // in transformed units (log10 for log axes)
  double hi;

  [[nodiscard]] double t(double v) const { return log ? std::log10(v) : v; }
  [[nodiscard]] double frac(double v) const { return hi > lo ? (t(v) - lo) / (hi - lo) : 0.5; }

  [[nodiscard]] std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
      return out;
    }
    const double span = hi - lo;
    if (!(span > 0)) return {lo};
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(v);
    return out;
  }
};

Scale make_scale(bool log, double lo, double hi) {
  if (log) {
    if (!(lo > 0)) lo = std::min(1.0, hi);
    return {true, std::floor(std::log10(lo)), std::max(std::ceil(std::log10(hi)), std::floor(std::log10(lo)) + 1)};
  }
  if (lo == hi) {
    lo -= 1;
    hi += 1;
  }
  const double pad = 0.05 * (hi - lo);
  return {false, lo - pad, hi + pad};
}

double px_x(const Scale& s, double v) { return kLeft + s.frac(v) * (kWidth - kLeft - kRight); }
double px_y(const Scale& s, double v) { return kHeight - kBottom - s.frac(v) * (kHeight - kTop - kBottom); }

std::string header(const std::string& title) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) +
         "</text>\n";
}

std::string frame(const std::string& x_label, const std::string& y_label) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  return "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
         num(y0 - y1) + "\" fill=\"none\" stroke=\"black\"/>\n" + "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" +
         num(kHeight - 16) + "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n" +
         "<text transform=\"translate(18 " + num((y0 + y1) / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(y_label) + "</text>\n";
}

}  // namespace

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

Figure::Figure(std::string title, Axis x, Axis y) : title_(std::move(title)), x_(std::move(x)), y_(std::move(y)) {}

void Figure::add_points(std::vector<Point> pts, std::string color, double radius) {
  layers_.push_back({Kind::points, std::move(pts), std::move(color), radius, false});
}

void Figure::add_markers(std::vector<Point> pts, std::string color, double size) {
  layers_.push_back({Kind::markers, std::move(pts), std::move(color), size, false});
}

void Figure::add_line(std::vector<Point> pts, std::string color, bool dashed) {
  layers_.push_back({Kind::line, std::move(pts), std::move(color), 1.5, dashed});
}

void Figure::add_legend(std::string text, std::string color) { legend_.emplace_back(std::move(text), std::move(color)); }

std::string Figure::render() const {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const auto& layer : layers_) {
    for (const auto& p : layer.pts) {
      if ((x_.log && !(p.x > 0)) || (y_.log && !(p.y > 0))) continue;
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
  }
  if (!std::isfinite(xlo)) throw InsufficientDataError("nothing to plot");
  const auto sx = make_scale(x_.log, xlo, xhi);
  const auto sy = make_scale(y_.log, ylo, yhi);

  std::string out = header(title_) + frame(x_.label, y_.label);
  for (double t : sx.ticks()) {
    const double x = px_x(sx, t);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kHeight - kBottom + 5) + "\" stroke=\"black\"/>\n<text x=\"" + num(x) + "\" y=\"" +
           num(kHeight - kBottom + 18) + "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n";
  }
  for (double t : sy.ticks()) {
    const double y = px_y(sy, t);
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) +
           "\" stroke=\"black\"/>\n<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n";
  }

  for (const auto& layer : layers_) {
    std::vector<std::pair<double, double>> px;
    for (const auto& p : layer.pts) {
      if ((x_.log && !(p.x > 0)) || (y_.log && !(p.y > 0))) continue;
      px.emplace_back(px_x(sx, p.x), px_y(sy, p.y));
    }
    switch (layer.kind) {
      case Kind::points:
        out += "<g fill=\"" + layer.color + "\">\n";
        for (auto [x, y] : px) out += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(layer.size) + "\"/>\n";
        out += "</g>\n";
        break;
      case Kind::markers:
        out += "<g fill=\"none\" stroke=\"" + layer.color + "\" stroke-width=\"1.5\">\n";
        for (auto [x, y] : px) {
          out += "<rect x=\"" + num(x - layer.size / 2) + "\" y=\"" + num(y - layer.size / 2) + "\" width=\"" +
                 num(layer.size) + "\" height=\"" + num(layer.size) + "\"/>\n";
        }
        out += "</g>\n";
        break;
      case Kind::line: {
        out += "<polyline fill=\"none\" stroke=\"" + layer.color + "\" stroke-width=\"" + num(layer.size) + "\"";
        if (layer.dashed) out += " stroke-dasharray=\"6 4\"";
        out += " points=\"";
        for (std::size_t i = 0; i < px.size(); ++i) out += (i ? " " : "") + num(px[i].first) + "," + num(px[i].second);
        out += "\"/>\n";
        break;
      }
    }
  }

  double ly = kTop + 16;
  for (const auto& [text, color] : legend_) {
    out += "<rect x=\"" + num(kLeft + 10) + "\" y=\"" + num(ly - 9) + "\" width=\"10\" height=\"10\" fill=\"" + color +
           "\"/>\n<text x=\"" + num(kLeft + 26) + "\" y=\"" + num(ly) + "\">" + escape(text) + "</text>\n";
    ly += 16;
  }
  return out + "</svg>\n";
}

std::string double_rank_chart(const std::string& title, const DoubleRankSeries& series,
                              const std::optional<PowerLawFit>& fit, std::span<const double> percents) {
  Figure fig(title, {"Global rank", true}, {"Local rank", true});
  std::vector<Point> pts;
  pts.reserve(series.pairs.size());
  for (const auto& p : series.pairs) pts.push_back({static_cast<double>(p.global_rank), static_cast<double>(p.local_rank)});
  fig.add_points(std::move(pts), kPalette[0]);

  if (fit && !series.pairs.empty()) {
    const double g0 = static_cast<double>(series.pairs.front().global_rank);
    const double g1 = static_cast<double>(series.pairs.back().global_rank);
    std::vector<Point> line;
    for (int i = 0; i <= 20; ++i) {
      const double g = std::exp(std::log(g0) + (std::log(g1) - std::log(g0)) * i / 20.0);
      line.push_back({g, std::exp(fit->ln_c + fit->alpha * std::log(g))});
    }
    fig.add_line(std::move(line), kPalette[1], true);
    fig.add_legend("fit: alpha = " + num(fit->alpha), kPalette[1]);
  }

  std::vector<Point> marks;
  for (double x : percents) {
    const auto boundary = top_boundary(x, series.n_global);
    const auto count = static_cast<std::size_t>(
        std::count_if(series.pairs.begin(), series.pairs.end(), [&](const RankPair& p) { return p.global_rank <= boundary; }));
    if (boundary > 0 && count > 0) marks.push_back({static_cast<double>(boundary), static_cast<double>(count)});
  }
  if (!marks.empty()) fig.add_markers(std::move(marks), "black");
  return fig.render();
}

std::string histogram_chart(const std::string& title,
                            const std::vector<std::pair<std::string, ScaledHistogram>>& series) {
  std::size_t nbins = 0;
  double ymax = 0;
  const ScaledHistogram* widest = nullptr;
  for (const auto& [label, h] : series) {
    if (h.bins.size() > nbins) {
      nbins = h.bins.size();
      widest = &h;
    }
    for (const auto& b : h.bins) ymax = std::max(ymax, b.frequency);
  }
  if (!widest || ymax <= 0) throw InsufficientDataError("nothing to plot");

  const Scale sy = make_scale(false, 0, ymax);
  const Scale sy0{false, 0, sy.hi};
  std::string out = header(title) + frame("Citations", "Number of papers");
  const double plot_w = kWidth - kLeft - kRight;
  const double slot = plot_w / static_cast<double>(nbins);
  const double bar = slot * 0.8 / static_cast<double>(series.size());
  for (double t : sy0.ticks()) {
    const double y = px_y(sy0, t);
    out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) +
           "\" stroke=\"black\"/>\n<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n";
  }
  for (std::size_t i = 0; i < nbins; ++i) {
    const auto& b = widest->bins[i];
    const std::string label = b.lower == b.upper ? std::to_string(b.lower)
                                                 : std::to_string(b.lower) + "-" + std::to_string(b.upper);
    out += "<text x=\"" + num(kLeft + slot * (i + 0.5)) + "\" y=\"" + num(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-size=\"9\">" + label + "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    out += "<g fill=\"" + std::string(color) + "\" fill-opacity=\"0.8\">\n";
    for (std::size_t i = 0; i < series[s].second.bins.size(); ++i) {
      const double f = series[s].second.bins[i].frequency;
      const double y = px_y(sy0, f);
      out += "<rect x=\"" + num(kLeft + slot * i + slot * 0.1 + bar * s) + "\" y=\"" + num(y) + "\" width=\"" +
             num(bar) + "\" height=\"" + num(kHeight - kBottom - y) + "\"/>\n";
    }
    out += "</g>\n<rect x=\"" + num(kWidth - kRight - 150) + "\" y=\"" + num(kTop + 8 + 16 * s) +
           "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n<text x=\"" + num(kWidth - kRight - 134) +
           "\" y=\"" + num(kTop + 17 + 16 * s) + "\">" + escape(series[s].first) + "</text>\n";
  }
  return out + "</svg>\n";
}

std::string npp_chart(const std::string& title, const NppSeries& series) {
  Figure fig(title, {"Normal quantile", false},
             {series.shift == LogShift::plus_one ? "ln(citations + 1)" : "ln(citations)", false});
  std::vector<Point> pts;
  pts.reserve(series.points.size());
  for (const auto& p : series.points) pts.push_back({p.quantile, p.value});
  fig.add_points(std::move(pts), kPalette[0]);
  return fig.render();
}

}  // namespace citelaw::svg
