#include "citelaw/report.hpp"

#include <algorithm>
#include <cstdio>

#include "citelaw/csv.hpp"

namespace citelaw::report {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out = buf;
  // Avoid "-0.000" for tiny negatives.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

std::string ratio_cell(const RatioCell& cell) { return cell.supported ? fixed(cell.value, 3) : std::string{}; }

void sort_rows(std::vector<IndicatorRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const IndicatorRow& a, const IndicatorRow& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.label < b.label;
  });
}

namespace {

std::vector<std::string> indicator_cells(const IndicatorRow& row) {
  return {row.label,
          std::to_string(row.total),
          fixed(100.0 * row.p0, 1),
          fixed(row.mnc, 1),
          ratio_cell(row.profile.ratio(SerialRatio::top10_over_all)),
          ratio_cell(row.profile.ratio(SerialRatio::top5_over_top50)),
          ratio_cell(row.profile.ratio(SerialRatio::top3_over_top30)),
          ratio_cell(row.profile.ratio(SerialRatio::top1_over_top10)),
          std::string(to_string(row.conformity.kind))};
}

std::string md_escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    if (ch == '|') out += '\\';
    out += ch;
  }
  return out;
}

std::string md_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const auto& c : cells) out += " " + md_escape(c) + " |";
    return out + "\n";
  };
  std::string out = line(header);
  out += "|";
  for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out = csv::join(header) + "\n";
  for (const auto& r : rows) out += csv::join(r) + "\n";
  return out;
}

std::vector<std::string> quartet_cells(const QuartetRow& row, double tolerance) {
  const auto agree = row.quartet.tails_agree(tolerance);
  return {row.label, std::to_string(row.quartet.size), ratio_cell(row.quartet.lower_tail),
          ratio_cell(row.quartet.mid), ratio_cell(row.quartet.upper_extreme),
          agree ? (*agree ? "yes" : "no") : ""};
}

std::vector<std::string> summary_cells(const SummaryRow& row) {
  return {row.label, std::to_string(row.number), fixed(row.mnc, 1), fixed(100.0 * row.uncited, 1)};
}

template <typename Row, typename F>
std::vector<std::vector<std::string>> map_rows(std::span<const Row> rows, F&& f) {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(f(r));
  return out;
}

std::string fit_number(const std::optional<PowerLawFit>& fit, double PowerLawFit::*field) {
  return fit ? fixed((*fit).*field, 6) : std::string{};
}

}  // namespace

std::string indicators_csv(std::span<const IndicatorRow> rows) {
  return csv_table({"label", "P", "P0_pct", "MNC", "r10_P", "r5_50", "r3_30", "r1_10", "class"},
                   map_rows(rows, indicator_cells));
}

std::string indicators_markdown(std::span<const IndicatorRow> rows) {
  return md_table({"Label", "P", "P0 (%)", "MNC", "P_top10%/P", "P_top5%/P_top50%", "P_top3%/P_top30%",
                   "P_top1%/P_top10%", "Class"},
                  map_rows(rows, indicator_cells));
}

std::string quartet_csv(std::span<const QuartetRow> rows, double tolerance) {
  return csv_table({"label", "P", "top50_P", "top5_10", "top1_10", "tails_agree"},
                   map_rows(rows, [&](const QuartetRow& r) { return quartet_cells(r, tolerance); }));
}

std::string quartet_markdown(std::span<const QuartetRow> rows, double tolerance) {
  return md_table({"Label", "P", "P_top50%/P", "P_top5%/P_top10%", "P_top1%/P_top10%", "Tails agree"},
                  map_rows(rows, [&](const QuartetRow& r) { return quartet_cells(r, tolerance); }));
}

std::string summary_csv(std::span<const SummaryRow> rows) {
  return csv_table({"label", "number", "MNC", "uncited_pct"}, map_rows(rows, summary_cells));
}

std::string summary_markdown(std::span<const SummaryRow> rows) {
  return md_table({"Label", "Number", "MNC", "Uncited (%)"}, map_rows(rows, summary_cells));
}

std::string histogram_csv(const LogHistogram& hist) {
  std::string out = "lower,upper,frequency\n";
  for (const auto& b : hist.bins) {
    out += std::to_string(b.lower) + "," + std::to_string(b.upper) + "," + std::to_string(b.frequency) + "\n";
  }
  return out;
}

ScaledHistogram as_scaled(const LogHistogram& hist) {
  ScaledHistogram out;
  out.total = static_cast<double>(hist.total);
  for (const auto& b : hist.bins) out.bins.push_back({b.lower, b.upper, static_cast<double>(b.frequency)});
  return out;
}

std::string overlay_csv(const std::string& label_a, const ScaledHistogram& a, const std::string& label_b,
                        const ScaledHistogram& b) {
  std::string out = csv::join({"lower", "upper", label_a, label_b}) + "\n";
  const auto n = std::max(a.bins.size(), b.bins.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& src = i < a.bins.size() ? a.bins[i] : b.bins[i];
    const double fa = i < a.bins.size() ? a.bins[i].frequency : 0.0;
    const double fb = i < b.bins.size() ? b.bins[i].frequency : 0.0;
    out += std::to_string(src.lower) + "," + std::to_string(src.upper) + "," + fixed(fa, 4) + "," +
           fixed(fb, 4) + "\n";
  }
  return out;
}

std::string npp_csv(const NppSeries& series) {
  std::string out = "i,position,quantile,value\n";
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const auto& p = series.points[i];
    out += std::to_string(i + 1) + "," + fixed(p.position, 8) + "," + fixed(p.quantile, 8) + "," +
           fixed(p.value, 8) + "\n";
  }
  return out;
}

std::string double_rank_csv(const DoubleRankSeries& series) {
  std::string out = "local_rank,global_rank\n";
  for (const auto& p : series.pairs) out += std::to_string(p.local_rank) + "," + std::to_string(p.global_rank) + "\n";
  return out;
}

std::string fit_csv(const FitSummary& summary) {
  std::string out = "fit,alpha,lnC,r2,range_lo,range_hi,points,curvature,quad_coeff\n";
  const std::string curvature = summary.curvature ? std::string(to_string(summary.curvature->kind)) : "";
  const std::string quad = summary.curvature ? fixed(summary.curvature->quad_coeff, 6) : "";
  auto row = [&](const char* name, const std::optional<PowerLawFit>& fit, RankRange range) {
    out += std::string(name) + "," + fit_number(fit, &PowerLawFit::alpha) + "," +
           fit_number(fit, &PowerLawFit::ln_c) + "," + fit_number(fit, &PowerLawFit::r2) + "," +
           fixed(range.lo, 2) + "," + fixed(range.hi, 2) + "," + (fit ? std::to_string(fit->points) : "") +
           "," + curvature + "," + quad + "\n";
  };
  row("full", summary.full, kFullRange);
  row("top10", summary.segments.top10, kTopTenth);
  row("bottom50", summary.segments.bottom50, kBottomHalf);
  return out;
}

nlohmann::ordered_json fit_json(const FitSummary& summary) {
  auto one = [](const std::optional<PowerLawFit>& fit) -> nlohmann::ordered_json {
    if (!fit) return nullptr;
    nlohmann::ordered_json j;
    j["alpha"] = fit->alpha;
    j["lnC"] = fit->ln_c;
    j["r2"] = fit->r2;
    j["range"] = {fit->range.lo, fit->range.hi};
    j["points"] = fit->points;
    return j;
  };
  nlohmann::ordered_json j;
  j["full"] = one(summary.full);
  j["top10"] = one(summary.segments.top10);
  j["bottom50"] = one(summary.segments.bottom50);
  if (summary.curvature) {
    j["curvature"] = {{"class", std::string(to_string(summary.curvature->kind))},
                      {"quad_coeff", summary.curvature->quad_coeff},
                      {"threshold", summary.curvature->threshold}};
  } else {
    j["curvature"] = nullptr;
  }
  return j;
}

std::string ks_csv(const LognormalFit& fit, const KsResult& ks) {
  std::string out = "n,shift,mu,sigma,method,mc_runs,D,p_value,p_band\n";
  out += std::to_string(ks.n) + "," + std::to_string(static_cast<int>(fit.shift)) + "," + fixed(fit.mu, 6) + "," +
         fixed(fit.sigma, 6) + "," + std::string(to_string(ks.method)) + "," + std::to_string(ks.mc_runs) + "," +
         fixed(ks.d, 6) + "," + fixed(ks.p_value, 4) + "," + csv::escape(p_value_band(ks.p_value)) + "\n";
  return out;
}

}  // namespace citelaw::report
