#include "citelaw/rankfit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "citelaw/error.hpp"

namespace citelaw {

namespace {

struct LogPoints {
  std::vector<double> x;  // ln(global_rank)
  std::vector<double> y;  // ln(local_rank)
};

LogPoints log_points(const DoubleRankSeries& series, RankRange range) {
  LogPoints pts;
  const double n = static_cast<double>(series.n_local);
  for (const auto& p : series.pairs) {
    if (!range.contains(static_cast<double>(p.local_rank) / n)) continue;
    pts.x.push_back(std::log(static_cast<double>(p.global_rank)));
    pts.y.push_back(std::log(static_cast<double>(p.local_rank)));
  }
  return pts;
}

double mean_of(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / static_cast<long double>(v.size()));
}

}  // namespace

PowerLawFit fit_power_law(const DoubleRankSeries& series, RankRange range) {
  const auto pts = log_points(series, range);
  if (pts.x.size() < 3) {
    throw InsufficientDataError("power-law fit needs at least 3 points in the rank range, found " +
                                std::to_string(pts.x.size()));
  }
  const double mx = mean_of(pts.x);
  const double my = mean_of(pts.y);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < pts.x.size(); ++i) {
    const double dx = pts.x[i] - mx;
    const double dy = pts.y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw InsufficientDataError("power-law fit: all global ranks identical");

  PowerLawFit fit;
  fit.range = range;
  fit.points = pts.x.size();
  fit.alpha = sxy / sxx;
  fit.ln_c = my - fit.alpha * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < pts.x.size(); ++i) {
    const double r = pts.y[i] - (fit.ln_c + fit.alpha * pts.x[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

SegmentSlopes segment_slopes(const DoubleRankSeries& series) {
  SegmentSlopes out;
  try {
    out.top10 = fit_power_law(series, kTopTenth);
  } catch (const InsufficientDataError&) {
  }
  try {
    out.bottom50 = fit_power_law(series, kBottomHalf);
  } catch (const InsufficientDataError&) {
  }
  return out;
}

std::string_view to_string(Curvature c) {
  switch (c) {
    case Curvature::none: return "none";
    case Curvature::downward: return "downward";
    case Curvature::upward: return "upward";
  }
  return "?";
}

CurvatureClass classify_curvature(const DoubleRankSeries& series, double threshold) {
  if (series.pairs.size() < kMinCurvaturePoints) {
    throw InsufficientDataError("curvature needs at least " + std::to_string(kMinCurvaturePoints) +
                                " points, found " + std::to_string(series.pairs.size()));
  }
  const auto pts = log_points(series, kFullRange);
  // Centering x leaves the quadratic coefficient unchanged and keeps the
  // normal equations well conditioned.
  const double mx = mean_of(pts.x);
  std::array<long double, 5> sx{};  // sums of u^0..u^4
  std::array<long double, 3> sxy{};  // sums of y*u^0..u^2
  for (std::size_t i = 0; i < pts.x.size(); ++i) {
    const long double u = pts.x[i] - mx;
    long double pw = 1;
    for (std::size_t k = 0; k < 5; ++k) {
      sx[k] += pw;
      if (k < 3) sxy[k] += pts.y[i] * pw;
      pw *= u;
    }
  }
  // Solve [[s0 s1 s2][s1 s2 s3][s2 s3 s4]] b = sxy by Cramer's rule.
  auto det3 = [](const std::array<std::array<long double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  std::array<std::array<long double, 3>, 3> a = {{{sx[0], sx[1], sx[2]}, {sx[1], sx[2], sx[3]}, {sx[2], sx[3], sx[4]}}};
  const long double det = det3(a);
  if (std::fabs(det) < 1e-300L) throw InsufficientDataError("curvature: degenerate rank spread");
  auto a2 = a;
  for (std::size_t r = 0; r < 3; ++r) a2[r][2] = sxy[r];

  CurvatureClass out;
  out.threshold = threshold;
  out.quad_coeff = static_cast<double>(det3(a2) / det);
  if (out.quad_coeff < -threshold) {
    out.kind = Curvature::downward;
  } else if (out.quad_coeff > threshold) {
    out.kind = Curvature::upward;
  } else {
    out.kind = Curvature::none;
  }
  return out;
}

ScaledHistogram downscale_histogram(const LogHistogram& hist, std::size_t target_total) {
  if (target_total < 1) throw ValidationError("downscale target must be at least 1");
  if (target_total > hist.total) {
    throw ValidationError("cannot upscale a histogram of " + std::to_string(hist.total) + " to " +
                          std::to_string(target_total));
  }
  const double factor = static_cast<double>(target_total) / static_cast<double>(hist.total);
  ScaledHistogram out;
  out.total = static_cast<double>(target_total);
  out.bins.reserve(hist.bins.size());
  for (const auto& b : hist.bins) out.bins.push_back({b.lower, b.upper, static_cast<double>(b.frequency) * factor});
  return out;
}

}  // namespace citelaw
