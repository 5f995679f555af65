#pragma once

// Shape analysis of citation distributions: logarithmic binning, normal
// probability plots of log citations, lognormal fits and Kolmogorov-Smirnov
// goodness of fit.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace citelaw {

struct HistogramBin {
  std::int64_t lower;  // inclusive
  std::int64_t upper;  // inclusive
  std::size_t frequency;
  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

// Bins {0}, {1}, {2}, then [2^k + 1, 2^(k+1)] for k = 1, 2, ... up to the bin
// holding the largest count. The three unit bins are always present.
struct LogHistogram {
  std::vector<HistogramBin> bins;
  std::size_t total = 0;
};

[[nodiscard]] LogHistogram log_histogram(std::span<const std::int64_t> citations);
// Index of the bin that holds `citations` (0-based).
[[nodiscard]] std::size_t log_bin_index(std::int64_t citations);

// 0 uses ln(c), 1 uses ln(c + 1).
enum class LogShift : int { none = 0, plus_one = 1 };

// plus_one when any zero is present, none otherwise.
[[nodiscard]] LogShift auto_shift(std::span<const std::int64_t> citations);
// ln(c + shift) of every value, in input order. Throws ValidationError on a
// zero with LogShift::none.
[[nodiscard]] std::vector<double> log_transform(std::span<const std::int64_t> citations, LogShift shift);

struct NppPoint {
  double position;  // (i - 0.5) / n
  double quantile;  // inverse normal CDF of position
  double value;     // ln(c_i + shift), ascending
};

struct NppSeries {
  std::vector<NppPoint> points;
  LogShift shift = LogShift::none;
  std::size_t n = 0;
};

[[nodiscard]] NppSeries npp(std::span<const std::int64_t> citations, LogShift shift);

struct LognormalFit {
  double mu = 0.0;
  double sigma = 0.0;  // sample standard deviation (n - 1)
  LogShift shift = LogShift::none;
  std::size_t n = 0;
};

[[nodiscard]] LognormalFit fit_lognormal(std::span<const std::int64_t> citations, LogShift shift);

// Mean and sample standard deviation of already log-transformed values.
struct NormalFit {
  double mean;
  double sd;
};
[[nodiscard]] NormalFit fit_normal(std::span<const double> values);

enum class KsMethod { fixed_parameter, lilliefors };

[[nodiscard]] std::string_view to_string(KsMethod m);

struct KsResult {
  double d = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  KsMethod method = KsMethod::lilliefors;
  std::size_t mc_runs = 0;  // 0 for the fixed-parameter method
};

inline constexpr std::size_t kDefaultMcRuns = 5000;
inline constexpr std::size_t kMinMcRuns = 1000;
inline constexpr std::size_t kMinKsSample = 5;

// Two-sided KS statistic of `sorted_values` (ascending) against N(mean, sd):
// max over i of max(i/n - F(x_i), F(x_i) - (i-1)/n).
[[nodiscard]] double ks_statistic(std::span<const double> sorted_values, double mean, double sd);

// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
[[nodiscard]] double kolmogorov_survival(double lambda);

// KS against the normal fitted to the same values, p-value from the
// asymptotic Kolmogorov distribution with Stephens' small-sample correction.
// Parameters are estimated from the data, so this p-value is conservative.
[[nodiscard]] KsResult ks_fixed_parameter(std::span<const double> values);

// Lilliefors: the p-value is the fraction of `mc_runs` simulated samples of
// the same size, drawn from the fitted normal and refitted, whose statistic is
// at least the observed one. Run r draws from Prng::derived(seed, r), so the
// result depends only on (values, mc_runs, seed).
[[nodiscard]] KsResult ks_lilliefors(std::span<const double> values, std::size_t mc_runs, std::uint64_t seed);

// KS test of ln(citations + shift).
[[nodiscard]] KsResult ks_test(std::span<const std::int64_t> citations, LogShift shift, KsMethod method,
                               std::size_t mc_runs, std::uint64_t seed);

// "< 0.01", "> 0.15" or the value to two decimals, as in journal tables.
[[nodiscard]] std::string p_value_band(double p);

}  // namespace citelaw
