#include "citelaw/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "citelaw/error.hpp"

namespace citelaw {

double mnc(std::span<const std::int64_t> citations) {
  if (citations.empty()) throw InsufficientDataError("mean number of citations of an empty set");
  long double sum = 0;
  for (auto c : citations) sum += static_cast<long double>(c);
  return static_cast<double>(sum / static_cast<long double>(citations.size()));
}

double uncited_share(std::span<const std::int64_t> citations) {
  if (citations.empty()) throw InsufficientDataError("uncited share of an empty set");
  const auto zeros = std::count(citations.begin(), citations.end(), std::int64_t{0});
  return static_cast<double>(zeros) / static_cast<double>(citations.size());
}

// Single pass with Welford-style co-moment updates.
double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ValidationError("pearson: length mismatch (" + std::to_string(xs.size()) + " vs " +
                          std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 3) throw InsufficientDataError("pearson: need at least 3 pairs");
  double mean_x = 0, mean_y = 0, m2x = 0, m2y = 0, cxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    mean_x += dx / n;
    mean_y += dy / n;
    m2x += dx * (xs[i] - mean_x);
    m2y += dy * (ys[i] - mean_y);
    cxy += dx * (ys[i] - mean_y);
  }
  if (m2x <= 0.0 || m2y <= 0.0) throw ValidationError("pearson: constant sequence");
  const double r = cxy / std::sqrt(m2x * m2y);
  // Within a few ulps of +/-1 the deviation is rounding noise, not signal.
  constexpr double kSnap = 8 * std::numeric_limits<double>::epsilon();
  if (1.0 - std::fabs(r) <= kSnap) return r > 0 ? 1.0 : -1.0;
  return r;
}

std::string_view to_string(Conformity c) {
  switch (c) {
    case Conformity::ideal: return "ideal";
    case Conformity::increasing: return "increasing";
    case Conformity::decreasing: return "decreasing";
    case Conformity::irregular: return "irregular";
    case Conformity::insufficient: return "insufficient";
  }
  return "?";
}

double relative_spread(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (mean == 0.0) return 0.0;
  return (*hi - *lo) / mean;
}

ConformityClass classify_conformity(const PercentileProfile& profile, double tolerance) {
  std::vector<double> values;
  for (const auto& r : profile.ratios) {
    if (r.supported) values.push_back(r.value);
  }
  ConformityClass out;
  out.supported = values.size();
  out.spread = relative_spread(values);
  if (values.size() < 3) {
    out.kind = Conformity::insufficient;
  } else if (out.spread < tolerance) {
    out.kind = Conformity::ideal;
  } else if (std::adjacent_find(values.begin(), values.end(), std::greater_equal<>{}) == values.end()) {
    out.kind = Conformity::increasing;
  } else if (std::adjacent_find(values.begin(), values.end(), std::less_equal<>{}) == values.end()) {
    out.kind = Conformity::decreasing;
  } else {
    out.kind = Conformity::irregular;
  }
  return out;
}

std::optional<bool> IndicatorQuartet::tails_agree(double tolerance) const {
  if (!lower_tail.supported || !mid.supported) return std::nullopt;
  const double pair[] = {lower_tail.value, mid.value};
  return relative_spread(pair) < tolerance;
}

IndicatorQuartet quartet(const PercentileProfile& profile) {
  auto cell = [&](double top, double bottom) {
    const auto numerator = profile.count_at(top);
    const auto denominator = profile.count_at(bottom);
    RatioCell out;
    out.supported = numerator >= profile.min_support && denominator > 0;
    if (denominator > 0) out.value = static_cast<double>(numerator) / static_cast<double>(denominator);
    return out;
  };
  IndicatorQuartet q;
  q.size = profile.total;
  q.lower_tail = cell(50, 100);
  q.mid = cell(5, 10);
  q.upper_extreme = cell(1, 10);
  return q;
}

IndicatorRow indicator_row(std::string label, const RankedCorpus& global, const Corpus& local,
                           std::size_t min_support, double tolerance) {
  if (local.empty()) throw InsufficientDataError("group '" + label + "' has no papers");
  const auto cites = local.citations();
  const auto ids = local.ids();
  IndicatorRow row;
  row.label = std::move(label);
  row.total = local.size();
  row.p0 = uncited_share(cites);
  row.mnc = mnc(cites);
  row.profile = percentile_profile(global, ids, min_support);
  row.conformity = classify_conformity(row.profile, tolerance);
  return row;
}

}  // namespace citelaw
