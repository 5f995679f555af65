#include "citelaw/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>
#include <variant>

#include "citelaw/csv.hpp"
#include "citelaw/error.hpp"
#include "citelaw/report.hpp"
#include "citelaw/svg.hpp"

namespace citelaw {

namespace {

std::filesystem::path write_file(const RunConfig& config, const std::string& name, const std::string& content,
                                 CommandResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  if (ec) throw IoError("cannot create output directory " + config.out.string() + ": " + ec.message());
  const auto path = config.out / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
  result.files.push_back(path);
  return path;
}

report::FitSummary fit_summary(const DoubleRankSeries& series, double curvature_threshold) {
  report::FitSummary s;
  if (series.pairs.size() >= 3) s.full = fit_power_law(series, kFullRange);
  s.segments = segment_slopes(series);
  if (series.pairs.size() >= kMinCurvaturePoints) s.curvature = classify_curvature(series, curvature_threshold);
  return s;
}

std::string slope_text(const std::optional<PowerLawFit>& fit) {
  return fit ? report::fixed(fit->alpha, 3) : std::string("n/a");
}

DoubleRankSeries series_for(const Workspace& ws, const Corpus& local) {
  const auto ids = local.ids();
  return double_rank(ws.ranked, ids);
}

GroupComparison describe_group(const RankedCorpus& global, const Corpus& local, const std::string& label,
                               std::size_t min_support, double tolerance) {
  if (local.size() < 3) {
    throw InsufficientDataError("group '" + label + "' has " + std::to_string(local.size()) +
                                " papers; at least 3 are needed");
  }
  const auto ids = local.ids();
  const auto series = double_rank(global, ids);
  GroupComparison g;
  g.label = label;
  g.size = local.size();
  g.slopes = segment_slopes(series);
  if (g.slopes.top10 && g.slopes.bottom50) {
    const double pair[] = {g.slopes.top10->alpha, g.slopes.bottom50->alpha};
    g.segments_agree = relative_spread(pair) < tolerance;
  }
  g.quartet = quartet(percentile_profile(global, ids, min_support));
  return g;
}

}  // namespace

GroupBy parse_group_by(const std::string& name) {
  if (name == "groups") return GroupBy::groups;
  if (name == "journal") return GroupBy::journal;
  throw ValidationError("unknown group-by key '" + name + "' (expected groups or journal)");
}

std::string file_stem(const std::string& label) {
  std::string out;
  for (unsigned char ch : label) out += std::isalnum(ch) || ch == '-' || ch == '.' ? static_cast<char>(ch) : '_';
  return out.empty() ? "all" : out;
}

Workspace open_workspace(const RunConfig& config) {
  LoadOptions options;
  options.pub_window = config.pub_window;
  options.journal_sidecar = config.journal_sidecar;
  auto loaded = load_corpus(config.input, config.format, options);
  auto selection = select(loaded, config.filter);
  std::vector<std::string> warnings;
  for (const auto& label : selection.unmatched_labels) warnings.push_back("filter " + label + " matched no records");
  if (selection.corpus.empty()) throw InsufficientDataError("corpus is empty after filtering");
  const int reference_year = config.reference_year.value_or(default_reference_year(selection.corpus));
  RankedCorpus ranked(selection.corpus, reference_year);
  return {std::move(selection.corpus), std::move(ranked), std::move(warnings)};
}

Corpus group_corpus(const Corpus& corpus, const RunConfig& config, const std::string& label) {
  SelectionFilter filter;
  if (config.group_by == GroupBy::groups) {
    filter.groups = {label};
    filter.single_group_only = config.single_group_only;
  } else {
    filter.journal = label;
  }
  return select(corpus, filter).corpus;
}

std::vector<std::string> all_labels(const Corpus& corpus, GroupBy group_by) {
  return group_by == GroupBy::groups ? group_labels(corpus) : journal_labels(corpus);
}

CommandResult cmd_indicators(const RunConfig& config) {
  const auto ws = open_workspace(config);
  CommandResult result;
  result.warnings = ws.warnings;
  std::vector<IndicatorRow> rows;
  for (const auto& label : all_labels(ws.corpus, config.group_by)) {
    const auto local = group_corpus(ws.corpus, config, label);
    if (local.empty()) continue;
    rows.push_back(indicator_row(label, ws.ranked, local, config.min_support, config.tolerance));
  }
  if (rows.empty()) throw InsufficientDataError("no groups found to report");
  report::sort_rows(rows);
  if (config.emit.csv) write_file(config, "indicators.csv", report::indicators_csv(rows), result);
  if (config.emit.md) write_file(config, "indicators.md", report::indicators_markdown(rows), result);
  result.summary = std::to_string(rows.size()) + " groups against " + std::to_string(ws.ranked.size()) +
                   " global papers";
  return result;
}

CommandResult cmd_doublerank(const RunConfig& config, const std::string& label) {
  const auto ws = open_workspace(config);
  const auto local = group_corpus(ws.corpus, config, label);
  if (local.size() < 3) {
    throw InsufficientDataError("group '" + label + "' has " + std::to_string(local.size()) +
                                " papers; at least 3 are needed");
  }
  CommandResult result;
  result.warnings = ws.warnings;
  const auto series = series_for(ws, local);
  const auto summary = fit_summary(series, config.curvature_threshold);
  const auto stem = "doublerank_" + file_stem(label);

  write_file(config, stem + ".csv", report::double_rank_csv(series), result);
  write_file(config, stem + "_fit.csv", report::fit_csv(summary), result);
  write_file(config, stem + "_fit.json", report::fit_json(summary).dump(2) + "\n", result);
  if (config.emit.svg) {
    write_file(config, stem + ".svg",
               svg::double_rank_chart("Double rank plot: " + label, series, summary.full, config.percentiles),
               result);
  }

  std::ostringstream text;
  text << label << ": n_local=" << series.n_local << " n_global=" << series.n_global
       << " alpha=" << slope_text(summary.full) << " top10=" << slope_text(summary.segments.top10)
       << " bottom50=" << slope_text(summary.segments.bottom50) << " curvature="
       << (summary.curvature ? to_string(summary.curvature->kind) : std::string_view("n/a"));
  result.summary = text.str();
  return result;
}

CommandResult cmd_distfit(const RunConfig& config, const std::string& label) {
  const auto ws = open_workspace(config);
  const auto local = label.empty() ? ws.corpus : group_corpus(ws.corpus, config, label);
  if (local.size() < kMinKsSample) {
    throw InsufficientDataError("group '" + label + "' has " + std::to_string(local.size()) + " papers; at least " +
                                std::to_string(kMinKsSample) + " are needed");
  }
  CommandResult result;
  result.warnings = ws.warnings;
  const auto cites = local.citations();
  const auto shift = config.shift.value_or(auto_shift(cites));
  const auto fit = fit_lognormal(cites, shift);
  const auto ks = ks_test(cites, shift, config.ks_method, config.mc_runs, config.seed);
  const auto hist = log_histogram(cites);
  const auto plot = npp(cites, shift);
  const auto name = label.empty() ? std::string("all") : label;
  const auto stem = "distfit_" + file_stem(label);

  write_file(config, stem + "_hist.csv", report::histogram_csv(hist), result);
  write_file(config, stem + "_npp.csv", report::npp_csv(plot), result);
  write_file(config, stem + "_ks.csv", report::ks_csv(fit, ks), result);

  std::optional<ScaledHistogram> world;
  if (!label.empty() && local.size() < ws.corpus.size()) {
    world = downscale_histogram(log_histogram(ws.corpus.citations()), local.size());
    write_file(config, stem + "_overlay.csv", report::overlay_csv(name, report::as_scaled(hist), "global_scaled", *world),
               result);
  }
  if (config.emit.md) {
    std::ostringstream md;
    md << "# Citation distribution: " << name << "\n\n"
       << "| n | shift | mu | sigma | KS D | p-value | method |\n| ---: | ---: | ---: | ---: | ---: | ---: | --- |\n"
       << "| " << ks.n << " | " << static_cast<int>(shift) << " | " << report::fixed(fit.mu, 3) << " | "
       << report::fixed(fit.sigma, 3) << " | " << report::fixed(ks.d, 4) << " | " << p_value_band(ks.p_value) << " | "
       << to_string(ks.method) << " |\n";
    write_file(config, stem + ".md", md.str(), result);
  }
  if (config.emit.svg) {
    std::vector<std::pair<std::string, ScaledHistogram>> bars = {{name, report::as_scaled(hist)}};
    if (world) bars.emplace_back("global (scaled)", *world);
    write_file(config, stem + "_hist.svg", svg::histogram_chart("Citation distribution: " + name, bars), result);
    write_file(config, stem + "_npp.svg", svg::npp_chart("Normal probability plot: " + name, plot), result);
  }

  std::ostringstream text;
  text << name << ": n=" << ks.n << " mu=" << report::fixed(fit.mu, 3) << " sigma=" << report::fixed(fit.sigma, 3)
       << " D=" << report::fixed(ks.d, 4) << " p=" << report::fixed(ks.p_value, 4) << " ("
       << p_value_band(ks.p_value) << ", " << to_string(ks.method) << ")";
  result.summary = text.str();
  return result;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::comparable ? "comparable-by-single-indicator" : "divergent-segments";
}

Comparison compare_groups(const RankedCorpus& global, const Corpus& a_corpus, const std::string& a_label,
                          const Corpus& b_corpus, const std::string& b_label, std::size_t min_support,
                          double tolerance) {
  Comparison c;
  c.a = describe_group(global, a_corpus, a_label, min_support, tolerance);
  c.b = describe_group(global, b_corpus, b_label, min_support, tolerance);
  c.verdict = c.a.segments_agree && c.b.segments_agree ? Verdict::comparable : Verdict::divergent;
  if (c.a.slopes.top10 && c.a.slopes.bottom50 && c.b.slopes.top10 && c.b.slopes.bottom50) {
    const double top = c.a.slopes.top10->alpha - c.b.slopes.top10->alpha;
    const double bottom = c.a.slopes.bottom50->alpha - c.b.slopes.bottom50->alpha;
    c.ordering_reversed = top * bottom < 0.0;
  }
  return c;
}

CommandResult cmd_compare(const RunConfig& config, const std::string& label_a, const std::string& label_b) {
  const auto ws = open_workspace(config);
  const auto a = group_corpus(ws.corpus, config, label_a);
  const auto b = group_corpus(ws.corpus, config, label_b);
  const auto cmp = compare_groups(ws.ranked, a, label_a, b, label_b, config.min_support, config.tolerance);
  CommandResult result;
  result.warnings = ws.warnings;
  const auto stem = "compare_" + file_stem(label_a) + "_vs_" + file_stem(label_b);

  const auto series_a = series_for(ws, a);
  const auto series_b = series_for(ws, b);
  write_file(config, stem + "_" + file_stem(label_a) + ".csv", report::double_rank_csv(series_a), result);
  write_file(config, stem + "_" + file_stem(label_b) + ".csv", report::double_rank_csv(series_b), result);

  // The larger group is scaled down to the smaller one.
  const auto hist_a = log_histogram(a.citations());
  const auto hist_b = log_histogram(b.citations());
  const auto target = std::min(hist_a.total, hist_b.total);
  const auto scaled_a = downscale_histogram(hist_a, target);
  const auto scaled_b = downscale_histogram(hist_b, target);
  write_file(config, stem + "_overlay.csv", report::overlay_csv(label_a, scaled_a, label_b, scaled_b), result);

  const std::vector<report::QuartetRow> quartets = {{label_a, cmp.a.quartet}, {label_b, cmp.b.quartet}};
  std::string verdict_csv = "label,P,slope_top10,slope_bottom50,segments_agree\n";
  for (const auto* g : {&cmp.a, &cmp.b}) {
    verdict_csv += g->label + "," + std::to_string(g->size) + "," +
                   (g->slopes.top10 ? report::fixed(g->slopes.top10->alpha, 4) : "") + "," +
                   (g->slopes.bottom50 ? report::fixed(g->slopes.bottom50->alpha, 4) : "") + "," +
                   (g->segments_agree ? "yes" : "no") + "\n";
  }
  verdict_csv += "verdict," + std::string(to_string(cmp.verdict)) + ",ordering_reversed," +
                 (cmp.ordering_reversed ? "yes" : "no") + ",\n";
  write_file(config, stem + ".csv", verdict_csv, result);
  write_file(config, stem + "_quartets.csv", report::quartet_csv(quartets, config.tolerance), result);

  if (config.emit.md) {
    std::ostringstream md;
    md << "# " << label_a << " vs " << label_b << "\n\n"
       << "| Group | P | Slope top 10% | Slope bottom 50% | Segments agree |\n| --- | ---: | ---: | ---: | --- |\n";
    for (const auto* g : {&cmp.a, &cmp.b}) {
      md << "| " << g->label << " | " << g->size << " | " << slope_text(g->slopes.top10) << " | "
         << slope_text(g->slopes.bottom50) << " | " << (g->segments_agree ? "yes" : "no") << " |\n";
    }
    md << "\n" << report::quartet_markdown(quartets, config.tolerance) << "\n"
       << "Verdict: **" << to_string(cmp.verdict) << "**"
       << (cmp.ordering_reversed ? " (segment slopes rank the groups in opposite orders)" : "") << "\n";
    write_file(config, stem + ".md", md.str(), result);
  }
  if (config.emit.svg) {
    svg::Figure fig("Double rank plots: " + label_a + " vs " + label_b, {"Global rank", true}, {"Local rank", true});
    for (const auto& [series, color, label] :
         {std::tuple{&series_a, "#1f77b4", label_a}, std::tuple{&series_b, "#d62728", label_b}}) {
      std::vector<svg::Point> pts;
      for (const auto& p : series->pairs) pts.push_back({double(p.global_rank), double(p.local_rank)});
      fig.add_points(std::move(pts), color);
      fig.add_legend(label, color);
    }
    write_file(config, stem + ".svg", fig.render(), result);
    write_file(config, stem + "_hist.svg",
               svg::histogram_chart("Citation distributions (scaled to " + std::to_string(target) + ")",
                                    {{label_a, scaled_a}, {label_b, scaled_b}}),
               result);
  }

  result.summary = label_a + " vs " + label_b + ": " + std::string(to_string(cmp.verdict)) +
                   (cmp.ordering_reversed ? ", segment ordering reversed" : "");
  return result;
}

CommandResult cmd_report(const RunConfig& config) {
  const auto ws = open_workspace(config);
  CommandResult result;
  result.warnings = ws.warnings;

  std::vector<report::SummaryRow> summary;
  const auto all = ws.corpus.citations();
  summary.push_back({"all", all.size(), mnc(all), uncited_share(all)});

  std::vector<IndicatorRow> rows;
  std::vector<report::QuartetRow> quartets;
  std::string fits = "label,P,alpha,slope_top10,slope_bottom50,curvature,quad_coeff\n";
  for (const auto& label : all_labels(ws.corpus, config.group_by)) {
    const auto local = group_corpus(ws.corpus, config, label);
    if (local.empty()) continue;
    rows.push_back(indicator_row(label, ws.ranked, local, config.min_support, config.tolerance));
    const auto cites = local.citations();
    summary.push_back({label, cites.size(), mnc(cites), uncited_share(cites)});
  }
  report::sort_rows(rows);
  for (const auto& row : rows) {
    quartets.push_back({row.label, quartet(row.profile)});
    const auto local = group_corpus(ws.corpus, config, row.label);
    const auto series = series_for(ws, local);
    const auto fit = fit_summary(series, config.curvature_threshold);
    fits += csv::join({row.label, std::to_string(row.total), fit.full ? report::fixed(fit.full->alpha, 4) : "",
                       fit.segments.top10 ? report::fixed(fit.segments.top10->alpha, 4) : "",
                       fit.segments.bottom50 ? report::fixed(fit.segments.bottom50->alpha, 4) : "",
                       fit.curvature ? std::string(to_string(fit.curvature->kind)) : "",
                       fit.curvature ? report::fixed(fit.curvature->quad_coeff, 6) : ""}) +
            "\n";
  }
  std::sort(summary.begin() + 1, summary.end(), [](const auto& x, const auto& y) {
    return x.number != y.number ? x.number > y.number : x.label < y.label;
  });

  if (config.emit.csv) {
    write_file(config, "report_summary.csv", report::summary_csv(summary), result);
    write_file(config, "report_indicators.csv", report::indicators_csv(rows), result);
    write_file(config, "report_quartets.csv", report::quartet_csv(quartets, config.tolerance), result);
    write_file(config, "report_fits.csv", fits, result);
  }
  std::ostringstream md;
  md << "# Citation distribution report\n\n"
     << "Global papers: " << ws.ranked.size() << "; publication window " << ws.corpus.pub_window().first << "-"
     << ws.corpus.pub_window().last << "; reference year " << ws.ranked.reference_year() << ".\n\n"
     << "## Size, mean citations and uncited share\n\n" << report::summary_markdown(summary) << "\n"
     << "## Percentile ratios\n\n" << report::indicators_markdown(rows) << "\n"
     << "## Indicator quartet\n\n" << report::quartet_markdown(quartets, config.tolerance);
  write_file(config, "report.md", md.str(), result);
  result.summary = std::to_string(rows.size()) + " groups reported";
  return result;
}

GroupPlan parse_group_plan(const std::string& text, const SynthSpec& spec) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() < 3) throw ValidationError("group plan must look like LABEL:COUNT:KIND, got '" + text + "'");

  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("group plan '" + text + "': '" + s + "' is not a number");
    }
  };

  GroupPlan plan;
  plan.label = parts[0];
  if (plan.label.empty()) throw ValidationError("group plan '" + text + "' has an empty label");
  const double count = number(parts[1]);
  if (count < 0 || count != std::floor(count)) throw ValidationError("group plan '" + text + "': bad count");
  plan.count = static_cast<std::size_t>(count);
  const auto& kind = parts[2];
  if (kind == "base") {
    if (parts.size() != 3) throw ValidationError("group plan '" + text + "': 'base' takes no arguments");
    plan.generator = LognormalGenerator{spec.mu, spec.sigma, spec.extra_zero_fraction};
  } else if (kind == "lognormal") {
    if (parts.size() < 5 || parts.size() > 6) {
      throw ValidationError("group plan '" + text + "': expected lognormal:MU:SIGMA[:ZEROS]");
    }
    plan.generator = LognormalGenerator{number(parts[3]), number(parts[4]), parts.size() == 6 ? number(parts[5]) : 0.0};
  } else if (kind == "ideal") {
    if (parts.size() != 4) throw ValidationError("group plan '" + text + "': expected ideal:ALPHA");
    plan.generator = IdealGenerator{number(parts[3]), true};
  } else {
    if (parts.size() != 3) throw ValidationError("group plan '" + text + "': presets take no arguments");
    plan.generator = scenario::by_name(kind);
  }
  return plan;
}

CommandResult cmd_simulate(const SimulateConfig& config) {
  config.spec.validate();
  std::size_t grouped = 0;
  for (const auto& g : config.groups) {
    if (std::holds_alternative<LognormalGenerator>(g.generator)) grouped += g.count;
  }
  if (grouped > config.spec.n) {
    throw ValidationError("groups request " + std::to_string(grouped) + " papers but n is " +
                          std::to_string(config.spec.n));
  }
  std::vector<GroupPlan> plans;
  if (config.spec.n > grouped) {
    plans.push_back({"", config.spec.n - grouped,
                     LognormalGenerator{config.spec.mu, config.spec.sigma, config.spec.extra_zero_fraction}});
  }
  plans.insert(plans.end(), config.groups.begin(), config.groups.end());
  const auto corpus = make_global_corpus(config.spec, plans);

  if (!config.out_file.parent_path().empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_file.parent_path(), ec);
  }
  save_corpus(config.out_file, config.format, corpus);

  CommandResult result;
  result.files.push_back(config.out_file);
  const auto cites = corpus.citations();
  std::ostringstream text;
  text << "n=" << corpus.size();
  if (!cites.empty()) {
    text << " zero_share=" << report::fixed(uncited_share(cites), 4) << " MNC=" << report::fixed(mnc(cites), 2);
  }
  result.summary = text.str();
  return result;
}

}  // namespace citelaw
