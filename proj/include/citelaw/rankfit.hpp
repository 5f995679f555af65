#pragma once

// Diagnostics of double-rank series: log-log power-law fits over local-rank
// ranges, the top-10% / bottom-50% segment slopes, curvature of the whole
// series, and histogram downscaling for overlays.

#include <optional>
#include <string_view>
#include <vector>

#include "citelaw/distfit.hpp"
#include "citelaw/ranking.hpp"

namespace citelaw {

// Half-open interval (lo, hi] on local_rank / n_local. {0, 1} is the full series.
struct RankRange {
  double lo = 0.0;
  double hi = 1.0;
  [[nodiscard]] bool contains(double fraction) const { return fraction > lo && fraction <= hi; }
};

inline constexpr RankRange kFullRange{0.0, 1.0};
inline constexpr RankRange kTopTenth{0.0, 0.1};
inline constexpr RankRange kBottomHalf{0.5, 1.0};

// ln(local_rank) = ln_c + alpha * ln(global_rank), ordinary least squares.
struct PowerLawFit {
  double alpha = 0.0;
  double ln_c = 0.0;
  double r2 = 0.0;
  RankRange range;
  std::size_t points = 0;
};

[[nodiscard]] PowerLawFit fit_power_law(const DoubleRankSeries& series, RankRange range = kFullRange);

struct SegmentSlopes {
  std::optional<PowerLawFit> top10;     // local ranks in the top 10%
  std::optional<PowerLawFit> bottom50;  // local ranks in the bottom 50%
};

// A segment with fewer than three points is left empty.
[[nodiscard]] SegmentSlopes segment_slopes(const DoubleRankSeries& series);

inline constexpr double kDefaultCurvatureThreshold = 0.02;
inline constexpr std::size_t kMinCurvaturePoints = 10;

enum class Curvature { none, downward, upward };

[[nodiscard]] std::string_view to_string(Curvature c);

struct CurvatureClass {
  Curvature kind = Curvature::none;
  double quad_coeff = 0.0;  // coefficient of ln(global)^2 in the quadratic fit
  double threshold = kDefaultCurvatureThreshold;
};

[[nodiscard]] CurvatureClass classify_curvature(const DoubleRankSeries& series,
                                                double threshold = kDefaultCurvatureThreshold);

struct ScaledBin {
  std::int64_t lower;
  std::int64_t upper;
  double frequency;
};

struct ScaledHistogram {
  std::vector<ScaledBin> bins;
  double total = 0.0;
};

// Multiplies every bin by target_total / hist.total. Upscaling is refused.
[[nodiscard]] ScaledHistogram downscale_histogram(const LogHistogram& hist, std::size_t target_total);

}  // namespace citelaw
