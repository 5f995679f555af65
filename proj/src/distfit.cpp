#include "citelaw/distfit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "citelaw/error.hpp"
#include "citelaw/normal.hpp"
#include "citelaw/prng.hpp"

namespace citelaw {

std::size_t log_bin_index(std::int64_t citations) {
  if (citations < 0) throw ValidationError("negative citation count");
  if (citations <= 2) return static_cast<std::size_t>(citations);
  return 1 + static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(citations - 1)));
}

LogHistogram log_histogram(std::span<const std::int64_t> citations) {
  if (citations.empty()) throw InsufficientDataError("histogram of an empty set");
  std::vector<std::size_t> freq(3, 0);
  for (auto c : citations) {
    const auto idx = log_bin_index(c);
    if (idx >= freq.size()) freq.resize(idx + 1, 0);
    ++freq[idx];
  }
  LogHistogram hist;
  hist.total = citations.size();
  hist.bins.reserve(freq.size());
  for (std::size_t j = 0; j < freq.size(); ++j) {
    if (j < 3) {
      const auto v = static_cast<std::int64_t>(j);
      hist.bins.push_back({v, v, freq[j]});
    } else {
      const auto k = j - 2;
      hist.bins.push_back({(std::int64_t{1} << k) + 1, std::int64_t{1} << (k + 1), freq[j]});
    }
  }
  return hist;
}

LogShift auto_shift(std::span<const std::int64_t> citations) {
  return std::find(citations.begin(), citations.end(), 0) != citations.end() ? LogShift::plus_one
                                                                             : LogShift::none;
}

std::vector<double> log_transform(std::span<const std::int64_t> citations, LogShift shift) {
  const auto offset = static_cast<std::int64_t>(shift);
  std::vector<double> out;
  out.reserve(citations.size());
  for (auto c : citations) {
    if (c < 0) throw ValidationError("negative citation count");
    if (c + offset == 0) {
      throw ValidationError("zero citations cannot be log-transformed without the +1 shift");
    }
    out.push_back(std::log(static_cast<double>(c + offset)));
  }
  return out;
}

NppSeries npp(std::span<const std::int64_t> citations, LogShift shift) {
  if (citations.empty()) throw InsufficientDataError("probability plot of an empty set");
  auto values = log_transform(citations, shift);
  std::sort(values.begin(), values.end());
  NppSeries series;
  series.shift = shift;
  series.n = values.size();
  series.points.reserve(values.size());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double p = (static_cast<double>(i + 1) - 0.5) / n;
    series.points.push_back({p, inv_normal_cdf(p), values[i]});
  }
  return series;
}

NormalFit fit_normal(std::span<const double> values) {
  if (values.size() < 2) throw InsufficientDataError("need at least 2 values to fit a normal");
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

LognormalFit fit_lognormal(std::span<const std::int64_t> citations, LogShift shift) {
  if (citations.size() < 3) throw InsufficientDataError("lognormal fit needs at least 3 values");
  const auto logs = log_transform(citations, shift);
  if (std::adjacent_find(citations.begin(), citations.end(), std::not_equal_to<>{}) == citations.end()) {
    throw ValidationError("degenerate sample: all citation counts are equal");
  }
  const auto fit = fit_normal(logs);
  return {fit.mean, fit.sd, shift, citations.size()};
}

std::string_view to_string(KsMethod m) {
  return m == KsMethod::lilliefors ? "lilliefors" : "fixed-parameter";
}

double ks_statistic(std::span<const double> sorted_values, double mean, double sd) {
  const double n = static_cast<double>(sorted_values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_values.size(); ++i) {
    const double f = normal_cdf((sorted_values[i] - mean) / sd);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // The alternating series converges slowly for small lambda; use the
  // theta-function form of the CDF there.
  if (lambda < 1.18) {
    const double y = std::exp(-1.2337005501361697 / (lambda * lambda));  // -pi^2/8
    const double cdf = 2.5066282746310002 / lambda * (y + std::pow(y, 9) + std::pow(y, 25) + std::pow(y, 49));
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

struct PreparedSample {
  std::vector<double> sorted;
  NormalFit fit;
};

PreparedSample prepare(std::span<const double> values) {
  if (values.size() < kMinKsSample) {
    throw InsufficientDataError("KS test needs at least " + std::to_string(kMinKsSample) + " values");
  }
  PreparedSample s{{values.begin(), values.end()}, {}};
  std::sort(s.sorted.begin(), s.sorted.end());
  s.fit = fit_normal(s.sorted);
  if (!(s.fit.sd > 0.0)) throw ValidationError("degenerate sample: zero variance");
  return s;
}

}  // namespace

KsResult ks_fixed_parameter(std::span<const double> values) {
  const auto s = prepare(values);
  KsResult out;
  out.method = KsMethod::fixed_parameter;
  out.n = s.sorted.size();
  out.d = ks_statistic(s.sorted, s.fit.mean, s.fit.sd);
  const double rn = std::sqrt(static_cast<double>(out.n));
  out.p_value = kolmogorov_survival((rn + 0.12 + 0.11 / rn) * out.d);
  return out;
}

KsResult ks_lilliefors(std::span<const double> values, std::size_t mc_runs, std::uint64_t seed) {
  if (mc_runs < kMinMcRuns) {
    throw ValidationError("Monte Carlo KS needs at least " + std::to_string(kMinMcRuns) + " runs");
  }
  const auto s = prepare(values);
  KsResult out;
  out.method = KsMethod::lilliefors;
  out.n = s.sorted.size();
  out.mc_runs = mc_runs;
  out.d = ks_statistic(s.sorted, s.fit.mean, s.fit.sd);

  std::vector<double> draw(out.n);
  std::size_t exceed = 0;
  for (std::size_t run = 0; run < mc_runs; ++run) {
    auto rng = Prng::derived(seed, run);
    for (auto& x : draw) x = s.fit.mean + s.fit.sd * inv_normal_cdf(rng.uniform_open());
    std::sort(draw.begin(), draw.end());
    const auto refit = fit_normal(draw);
    if (ks_statistic(draw, refit.mean, refit.sd) >= out.d) ++exceed;
  }
  out.p_value = static_cast<double>(exceed) / static_cast<double>(mc_runs);
  return out;
}

KsResult ks_test(std::span<const std::int64_t> citations, LogShift shift, KsMethod method,
                 std::size_t mc_runs, std::uint64_t seed) {
  const auto logs = log_transform(citations, shift);
  return method == KsMethod::lilliefors ? ks_lilliefors(logs, mc_runs, seed) : ks_fixed_parameter(logs);
}

std::string p_value_band(double p) {
  if (p < 0.01) return "< 0.01";
  if (p > 0.15) return "> 0.15";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.2f", p);
  return buf;
}

}  // namespace citelaw
