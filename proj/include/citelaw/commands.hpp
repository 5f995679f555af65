#pragma once

// The analyses behind each CLI subcommand. Every command reads its inputs
// from a RunConfig, writes files under RunConfig::out and returns what it
// wrote plus a short console summary. Output is a pure function of
// (input file, config), so repeated runs produce byte-identical files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "citelaw/corpus.hpp"
#include "citelaw/distfit.hpp"
#include "citelaw/indicators.hpp"
#include "citelaw/rankfit.hpp"
#include "citelaw/synth.hpp"

namespace citelaw {

enum class GroupBy { groups, journal };

[[nodiscard]] GroupBy parse_group_by(const std::string& name);

struct EmitFlags {
  bool csv = true;
  bool md = false;
  bool svg = false;
};

struct RunConfig {
  std::filesystem::path input;
  Format format = Format::jsonl;
  GroupBy group_by = GroupBy::groups;
  SelectionFilter filter;          // applied to the whole corpus before ranking
  bool single_group_only = false;  // local groups keep only single-label papers
  std::vector<double> percentiles{kProfilePercents.begin(), kProfilePercents.end()};
  double tolerance = kDefaultTolerance;
  std::size_t min_support = kDefaultMinSupport;
  std::uint64_t seed = 0;
  std::size_t mc_runs = kDefaultMcRuns;
  KsMethod ks_method = KsMethod::lilliefors;
  std::optional<LogShift> shift;  // default: +1 when zeros are present
  double curvature_threshold = kDefaultCurvatureThreshold;
  std::optional<int> reference_year;
  std::optional<YearWindow> pub_window;
  std::optional<std::filesystem::path> journal_sidecar;
  std::filesystem::path out = ".";
  EmitFlags emit;
};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::string summary;
  std::vector<std::string> warnings;
};

// Loaded, filtered and ranked input shared by the analyses.
struct Workspace {
  Corpus corpus;
  RankedCorpus ranked;
  std::vector<std::string> warnings;
};

[[nodiscard]] Workspace open_workspace(const RunConfig& config);
// Papers of one group under config.group_by (and single_group_only).
[[nodiscard]] Corpus group_corpus(const Corpus& corpus, const RunConfig& config, const std::string& label);
// All group labels present, in first-seen order.
[[nodiscard]] std::vector<std::string> all_labels(const Corpus& corpus, GroupBy group_by);

// Filesystem-safe form of a label.
[[nodiscard]] std::string file_stem(const std::string& label);

CommandResult cmd_indicators(const RunConfig& config);
CommandResult cmd_doublerank(const RunConfig& config, const std::string& label);
// An empty label analyses the whole (filtered) corpus.
CommandResult cmd_distfit(const RunConfig& config, const std::string& label);
CommandResult cmd_compare(const RunConfig& config, const std::string& label_a, const std::string& label_b);
CommandResult cmd_report(const RunConfig& config);

enum class Verdict { comparable, divergent };
[[nodiscard]] std::string_view to_string(Verdict v);

struct GroupComparison {
  std::string label;
  std::size_t size = 0;
  SegmentSlopes slopes;
  bool segments_agree = false;
  IndicatorQuartet quartet;
};

struct Comparison {
  GroupComparison a;
  GroupComparison b;
  Verdict verdict = Verdict::divergent;
  // Top-10% and bottom-50% slopes rank the two groups in opposite orders.
  bool ordering_reversed = false;
};

// Segment slopes of one group agree when their relative spread is below
// `tolerance`; the pair is comparable by a single indicator only when both
// groups agree.
[[nodiscard]] Comparison compare_groups(const RankedCorpus& global, const Corpus& a_corpus,
                                        const std::string& a_label, const Corpus& b_corpus,
                                        const std::string& b_label, std::size_t min_support, double tolerance);

struct SimulateConfig {
  SynthSpec spec;
  // Extra groups; the remaining spec.n - sum(lognormal counts) papers form an
  // unlabelled background drawn with the SynthSpec's own parameters.
  std::vector<GroupPlan> groups;
  std::filesystem::path out_file;
  Format format = Format::jsonl;
};

// Parses "LABEL:COUNT:KIND[:args]" where KIND is one of
//   base                      -> the SynthSpec's own lognormal parameters
//   world | journal-like | zero-inflated | india-like | japan-like
//   lognormal:MU:SIGMA[:ZEROS]
//   ideal:ALPHA               -> ideal power-law subsample of the final corpus
[[nodiscard]] GroupPlan parse_group_plan(const std::string& text, const SynthSpec& spec);

CommandResult cmd_simulate(const SimulateConfig& config);

}  // namespace citelaw
