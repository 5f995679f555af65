#pragma once

// Table and series emitters. Number formatting follows the journal tables:
// ratios to 3 decimals, MNC and uncited percentage to 1 decimal.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "citelaw/distfit.hpp"
#include "citelaw/indicators.hpp"
#include "citelaw/rankfit.hpp"

namespace citelaw::report {

[[nodiscard]] std::string fixed(double value, int decimals);
// Ratio cell: blank when unsupported.
[[nodiscard]] std::string ratio_cell(const RatioCell& cell);

// P descending, then label ascending.
void sort_rows(std::vector<IndicatorRow>& rows);

// Header: label,P,P0_pct,MNC,r10_P,r5_50,r3_30,r1_10,class
[[nodiscard]] std::string indicators_csv(std::span<const IndicatorRow> rows);
[[nodiscard]] std::string indicators_markdown(std::span<const IndicatorRow> rows);

struct QuartetRow {
  std::string label;
  IndicatorQuartet quartet;
};
// Header: label,P,top50_P,top5_10,top1_10,tails_agree
[[nodiscard]] std::string quartet_csv(std::span<const QuartetRow> rows, double tolerance);
[[nodiscard]] std::string quartet_markdown(std::span<const QuartetRow> rows, double tolerance);

// Header: label,number,MNC,uncited_pct
struct SummaryRow {
  std::string label;
  std::size_t number = 0;
  double mnc = 0.0;
  double uncited = 0.0;
};
[[nodiscard]] std::string summary_csv(std::span<const SummaryRow> rows);
[[nodiscard]] std::string summary_markdown(std::span<const SummaryRow> rows);

// Header: lower,upper,frequency
[[nodiscard]] std::string histogram_csv(const LogHistogram& hist);
// Header: lower,upper,<label_a>,<label_b>. Frequencies printed with 4 decimals.
[[nodiscard]] std::string overlay_csv(const std::string& label_a, const ScaledHistogram& a,
                                      const std::string& label_b, const ScaledHistogram& b);
[[nodiscard]] ScaledHistogram as_scaled(const LogHistogram& hist);

// Header: i,position,quantile,value
[[nodiscard]] std::string npp_csv(const NppSeries& series);

// Header: local_rank,global_rank
[[nodiscard]] std::string double_rank_csv(const DoubleRankSeries& series);

struct FitSummary {
  std::optional<PowerLawFit> full;
  SegmentSlopes segments;
  std::optional<CurvatureClass> curvature;
};
// Header: fit,alpha,lnC,r2,range_lo,range_hi,points,curvature,quad_coeff
// Rows "full", "top10", "bottom50"; unavailable fits leave numeric cells blank.
[[nodiscard]] std::string fit_csv(const FitSummary& summary);
[[nodiscard]] nlohmann::ordered_json fit_json(const FitSummary& summary);

// Header: n,shift,mu,sigma,method,mc_runs,D,p_value,p_band
[[nodiscard]] std::string ks_csv(const LognormalFit& fit, const KsResult& ks);

}  // namespace citelaw::report
