// citelaw command-line tool.
//
// Exit codes: 0 success, 1 validation error (including bad flags),
// 2 I/O error, 3 insufficient data.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "citelaw/commands.hpp"
#include "citelaw/error.hpp"

namespace {

using namespace citelaw;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(what + ": '" + text + "' is not a number");
}

YearWindow parse_window(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) throw ValidationError("window must look like FIRST-LAST, got '" + text + "'");
  const double a = parse_double(text.substr(0, dash), "window start");
  const double b = parse_double(text.substr(dash + 1), "window end");
  if (a != std::floor(a) || b != std::floor(b) || a > b) throw ValidationError("bad year window '" + text + "'");
  return {static_cast<int>(a), static_cast<int>(b)};
}

std::uint64_t default_seed() {
  const char* env = std::getenv("CITELAW_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || env[0] == '-') throw ValidationError(std::string("CITELAW_SEED is not an unsigned integer: ") + env);
  return v;
}

struct RawFlags {
  std::string input;
  std::string format = "jsonl";
  std::string group_by = "groups";
  std::vector<std::string> filters;
  std::string percentiles;
  double tolerance = kDefaultTolerance;
  std::size_t min_support = kDefaultMinSupport;
  std::uint64_t seed = 0;
  std::size_t mc_runs = kDefaultMcRuns;
  std::string out;
  std::vector<std::string> emit;
  bool single_group = false;
  std::string ks_method = "lilliefors";
  std::string shift = "auto";
  double curvature_threshold = kDefaultCurvatureThreshold;
  std::optional<int> reference_year;
  std::string pub_window;
  std::string journals;
};

RunConfig build_config(const RawFlags& raw, bool allow_svg) {
  RunConfig c;
  if (raw.input.empty()) throw ValidationError("--input is required");
  c.input = raw.input;
  c.format = parse_format(raw.format);
  c.group_by = parse_group_by(raw.group_by);
  for (const auto& term : raw.filters) apply_filter_term(c.filter, term);
  c.single_group_only = raw.single_group;
  if (!raw.percentiles.empty()) {
    c.percentiles.clear();
    for (const auto& p : split(raw.percentiles, ',')) {
      const double v = parse_double(p, "--percentiles");
      if (!(v > 0.0 && v <= 100.0)) throw ValidationError("percentile " + p + " is outside (0, 100]");
      c.percentiles.push_back(v);
    }
  }
  if (!(raw.tolerance > 0.0)) throw ValidationError("--tolerance must be positive");
  c.tolerance = raw.tolerance;
  if (raw.min_support == 0) throw ValidationError("--min-support must be at least 1");
  c.min_support = raw.min_support;
  c.seed = raw.seed;
  c.mc_runs = raw.mc_runs;
  if (raw.ks_method == "lilliefors") {
    c.ks_method = KsMethod::lilliefors;
  } else if (raw.ks_method == "fixed") {
    c.ks_method = KsMethod::fixed_parameter;
  } else {
    throw ValidationError("--ks-method must be lilliefors or fixed");
  }
  if (raw.shift == "none") {
    c.shift = LogShift::none;
  } else if (raw.shift == "plus-one") {
    c.shift = LogShift::plus_one;
  } else if (raw.shift != "auto") {
    throw ValidationError("--shift must be auto, none or plus-one");
  }
  if (!(raw.curvature_threshold >= 0.0)) throw ValidationError("--curvature-threshold must be non-negative");
  c.curvature_threshold = raw.curvature_threshold;
  c.reference_year = raw.reference_year;
  if (!raw.pub_window.empty()) c.pub_window = parse_window(raw.pub_window);
  if (!raw.journals.empty()) c.journal_sidecar = raw.journals;
  c.out = raw.out.empty() ? "." : raw.out;
  if (!raw.emit.empty()) {
    c.emit = {false, false, false};
    for (const auto& flag : raw.emit) {
      for (const auto& e : split(flag, ',')) {
        if (e == "csv") {
          c.emit.csv = true;
        } else if (e == "md") {
          c.emit.md = true;
        } else if (e == "svg") {
          c.emit.svg = true;
        } else {
          throw ValidationError("--emit accepts csv, md or svg, got '" + e + "'");
        }
      }
    }
  }
  if (c.emit.svg && !allow_svg) throw ValidationError("--emit svg needs a plotting command (doublerank, distfit, compare)");
  return c;
}

void print(const CommandResult& result) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  if (!result.summary.empty()) std::cout << result.summary << "\n";
  for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Citation distribution analysis: percentile indicators, double-rank power laws, lognormal fits"};
  app.require_subcommand(1);
  app.fallthrough();

  RawFlags raw;
  try {
    raw.seed = default_seed();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  app.add_option("--input", raw.input, "Corpus file (JSONL or CSV)");
  app.add_option("--format", raw.format, "Corpus format: jsonl or csv")->capture_default_str();
  app.add_option("--group-by", raw.group_by, "Group key: groups or journal")->capture_default_str();
  app.add_option("--filter", raw.filters, "Filter term k=v (groups, journal, topic, year); repeatable");
  app.add_option("--percentiles", raw.percentiles, "Comma-separated marker percentiles (default 1,3,5,10,30,50,100)");
  app.add_option("--tolerance", raw.tolerance, "Relative spread tolerance")->capture_default_str();
  app.add_option("--min-support", raw.min_support, "Minimum numerator count for a ratio")->capture_default_str();
  app.add_option("--seed", raw.seed, "Random seed (default: $CITELAW_SEED or 0)");
  app.add_option("--mc-runs", raw.mc_runs, "Monte Carlo runs for the Lilliefors p-value")->capture_default_str();
  app.add_option("--out", raw.out, "Output directory (simulate: output corpus file)");
  app.add_option("--emit", raw.emit, "Outputs: csv, md, svg; repeatable or comma-separated");
  app.add_flag("--single-group", raw.single_group, "Groups keep only papers carrying a single group label");
  app.add_option("--reference-year", raw.reference_year, "Citation reference year (default: window end + 1)");
  app.add_option("--pub-window", raw.pub_window, "Publication window FIRST-LAST");
  app.add_option("--journals", raw.journals, "Journal sidecar CSV (name,jif)");
  app.add_option("--ks-method", raw.ks_method, "KS p-value: lilliefors or fixed")->capture_default_str();
  app.add_option("--shift", raw.shift, "Log shift: auto, none or plus-one")->capture_default_str();
  app.add_option("--curvature-threshold", raw.curvature_threshold, "Quadratic coefficient threshold")
      ->capture_default_str();

  auto* indicators = app.add_subcommand("indicators", "Percentile ratio table, one row per group");

  std::string dr_label;
  auto* doublerank = app.add_subcommand("doublerank", "Double rank series, power-law fits and curvature");
  doublerank->add_option("label", dr_label, "Group label")->required();

  std::string df_label;
  auto* distfit = app.add_subcommand("distfit", "Log-binned histogram, normal probability plot and KS test");
  distfit->add_option("label", df_label, "Group label (default: whole corpus)");

  std::string cmp_a;
  std::string cmp_b;
  auto* compare = app.add_subcommand("compare", "Compare two groups");
  compare->add_option("a", cmp_a, "First group")->required();
  compare->add_option("b", cmp_b, "Second group")->required();

  auto* report = app.add_subcommand("report", "Summary, indicator and quartet tables for every group");

  SynthSpec spec;
  spec.n = 10000;
  spec.mu = 2.6;
  spec.sigma = 1.2;
  std::string rounding = "nearest";
  std::vector<std::string> plans;
  std::string window = "2014-2017";
  auto* simulate = app.add_subcommand("simulate", "Write a seeded synthetic corpus");
  simulate->add_option("--n", spec.n, "Number of papers")->capture_default_str();
  simulate->add_option("--mu", spec.mu, "Lognormal mu")->capture_default_str();
  simulate->add_option("--sigma", spec.sigma, "Lognormal sigma")->capture_default_str();
  simulate->add_option("--zeros", spec.extra_zero_fraction, "Extra zero fraction")->capture_default_str();
  simulate->add_option("--rounding", rounding, "nearest or floor")->capture_default_str();
  simulate->add_option("--window", window, "Publication window FIRST-LAST")->capture_default_str();
  simulate->add_option("--group", plans, "Group plan LABEL:COUNT:KIND[:args]; repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed()) {
      spec.seed = raw.seed;
      if (rounding == "nearest") {
        spec.rounding = Discretization::nearest;
      } else if (rounding == "floor") {
        spec.rounding = Discretization::floor;
      } else {
        throw ValidationError("--rounding must be nearest or floor");
      }
      spec.pub_window = parse_window(window);
      SimulateConfig sc;
      sc.spec = spec;
      for (const auto& p : plans) sc.groups.push_back(parse_group_plan(p, spec));
      sc.out_file = raw.out.empty() ? "corpus.jsonl" : raw.out;
      sc.format = parse_format(raw.format);
      print(cmd_simulate(sc));
    } else if (indicators->parsed()) {
      print(cmd_indicators(build_config(raw, false)));
    } else if (doublerank->parsed()) {
      print(cmd_doublerank(build_config(raw, true), dr_label));
    } else if (distfit->parsed()) {
      print(cmd_distfit(build_config(raw, true), df_label));
    } else if (compare->parsed()) {
      print(cmd_compare(build_config(raw, true), cmp_a, cmp_b));
    } else if (report->parsed()) {
      print(cmd_report(build_config(raw, false)));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
