#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "citelaw/ranking.hpp"

namespace citelaw {

[[nodiscard]] double mnc(std::span<const std::int64_t> citations);
[[nodiscard]] double uncited_share(std::span<const std::int64_t> citations);

// Sample Pearson correlation. Requires equal lengths >= 3 and non-constant inputs.
[[nodiscard]] double pearson(std::span<const double> xs, std::span<const double> ys);

inline constexpr double kDefaultTolerance = 0.15;

enum class Conformity { ideal, increasing, decreasing, irregular, insufficient };

[[nodiscard]] std::string_view to_string(Conformity c);

struct ConformityClass {
  Conformity kind = Conformity::insufficient;
  double spread = 0.0;  // (max - min) / mean over the supported ratios
  std::size_t supported = 0;
};

// Relative spread (max - min) / mean. Returns 0 for fewer than two values or
// a zero mean.
[[nodiscard]] double relative_spread(std::span<const double> values);

// Rule order: insufficient (< 3 supported ratios), ideal (spread < tolerance),
// strictly increasing / decreasing in serial order, otherwise irregular.
[[nodiscard]] ConformityClass classify_conformity(const PercentileProfile& profile,
                                                  double tolerance = kDefaultTolerance);

struct IndicatorQuartet {
  std::size_t size = 0;            // P
  RatioCell lower_tail;            // P_top50% / P
  RatioCell mid;                   // P_top5% / P_top10%
  RatioCell upper_extreme;         // P_top1% / P_top10%

  // lower_tail and mid equal within tolerance (the two-indicator version of
  // the conformity rule). nullopt when either side is unsupported.
  [[nodiscard]] std::optional<bool> tails_agree(double tolerance = kDefaultTolerance) const;
};

[[nodiscard]] IndicatorQuartet quartet(const PercentileProfile& profile);

struct IndicatorRow {
  std::string label;
  std::size_t total = 0;
  double p0 = 0.0;
  double mnc = 0.0;
  PercentileProfile profile;
  ConformityClass conformity;
};

[[nodiscard]] IndicatorRow indicator_row(std::string label, const RankedCorpus& global, const Corpus& local,
                                         std::size_t min_support = kDefaultMinSupport,
                                         double tolerance = kDefaultTolerance);

}  // namespace citelaw
