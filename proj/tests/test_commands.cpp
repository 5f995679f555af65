#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "citelaw/commands.hpp"
#include "citelaw/error.hpp"
#include "citelaw/report.hpp"
#include "oracles.hpp"

using namespace citelaw;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CITELAW_TEST_DATA;
const std::string kCli = CITELAW_CLI;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("citelaw_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunConfig fixture_config(const fs::path& out) {
  RunConfig c;
  c.input = kData / "fixture.jsonl";
  c.out = out;
  c.emit = {true, true, false};
  return c;
}

int run_cli(const std::string& args) {
  const int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_corpus(const fs::path& dir, const std::string& name, const Corpus& c) {
  const auto path = dir / name;
  save_corpus(path, Format::jsonl, c);
  return path;
}

}  // namespace

TEST_CASE("indicators on the bundled fixture match the frozen goldens") {
  const auto out = scratch("golden");
  const auto result = cmd_indicators(fixture_config(out));
  CHECK(result.files.size() == 2);
  CHECK(slurp(out / "indicators.csv") == slurp(kData / "golden" / "indicators.csv"));
  CHECK(slurp(out / "indicators.md") == slurp(kData / "golden" / "indicators.md"));
  const auto first_line = slurp(out / "indicators.csv").substr(0, 49);
  CHECK(first_line == "label,P,P0_pct,MNC,r10_P,r5_50,r3_30,r1_10,class\n");
}

TEST_CASE("golden row A agrees with an independent count") {
  const auto corpus = load_corpus(kData / "fixture.jsonl", Format::jsonl);
  std::vector<PaperRecord> order = corpus.records();
  const int ref = corpus.pub_window().last + 1;
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) { return oracle::beats(a, b, ref); });
  std::size_t p = 0, c10 = 0, c5 = 0, c50 = 0, zeros = 0;
  long double cites = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!order[i].has_group("A")) continue;
    ++p;
    cites += order[i].citations;
    zeros += order[i].citations == 0;
    const auto rank = i + 1;
    c10 += rank <= order.size() / 10;
    c5 += rank <= order.size() * 5 / 100;
    c50 += rank <= order.size() / 2;
  }
  char expected[128];
  std::snprintf(expected, sizeof expected, "A,%zu,%.1f,%.1f,%.3f,%.3f,", p, 100.0 * zeros / p,
                static_cast<double>(cites / p), static_cast<double>(c10) / p, static_cast<double>(c5) / c50);
  CHECK(slurp(kData / "golden" / "indicators.csv").find(std::string("\n") + expected) != std::string::npos);
}

TEST_CASE("indicator rows are ordered by size then label, and runs are byte-identical") {
  const auto out1 = scratch("det1");
  const auto out2 = scratch("det2");
  (void)cmd_indicators(fixture_config(out1));
  (void)cmd_indicators(fixture_config(out2));
  CHECK(slurp(out1 / "indicators.csv") == slurp(out2 / "indicators.csv"));

  std::vector<IndicatorRow> rows(3);
  rows[0].label = "b";
  rows[0].total = 5;
  rows[1].label = "a";
  rows[1].total = 5;
  rows[2].label = "c";
  rows[2].total = 9;
  report::sort_rows(rows);
  CHECK(rows[0].label == "c");
  CHECK(rows[1].label == "a");
}

TEST_CASE("two-group corpus gives a two-row table with a blank top-1% cell") {
  SynthSpec spec;
  spec.n = 4000;
  spec.seed = 17;
  spec.mu = 2.6;
  spec.sigma = 1.2;
  const auto corpus = make_global_corpus(spec, {{"X", 2500, scenario::world()}, {"Y", 1500, scenario::world()}});
  const auto dir = scratch("two");
  RunConfig c;
  c.input = write_corpus(dir, "c.jsonl", corpus);
  c.out = dir;
  (void)cmd_indicators(c);
  const auto text = slurp(dir / "indicators.csv");
  std::istringstream lines(text);
  std::string header, x, y, extra;
  std::getline(lines, header);
  std::getline(lines, x);
  std::getline(lines, y);
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(x.rfind("X,2500,", 0) == 0);
  CHECK(y.rfind("Y,1500,", 0) == 0);
  // Y has about 15 papers in the global top 1%; raising min_support blanks r1_10.
  c.min_support = 1000;
  (void)cmd_indicators(c);
  CHECK(slurp(dir / "indicators.csv").find(",,,,insufficient") != std::string::npos);
}

TEST_CASE("empty selection is insufficient data") {
  auto c = fixture_config(scratch("empty"));
  apply_filter_term(c.filter, "groups=NOPE");
  CHECK_THROWS_AS((void)cmd_indicators(c), InsufficientDataError);
}

TEST_CASE("doublerank on an ideal group") {
  const auto dir = scratch("dr");
  auto c = fixture_config(dir);
  c.emit.svg = true;
  const auto r = cmd_doublerank(c, "E");
  CHECK(fs::exists(dir / "doublerank_E.csv"));
  CHECK(fs::exists(dir / "doublerank_E.svg"));
  const auto fit = slurp(dir / "doublerank_E_fit.csv");
  std::istringstream in(fit);
  std::string header, full;
  std::getline(in, header);
  std::getline(in, full);
  const double alpha = std::stod(full.substr(5));
  CHECK(std::fabs(alpha - 0.8) < 0.05);
  CHECK(full.find(",none,") != std::string::npos);
  const auto svg = slurp(dir / "doublerank_E.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<rect") != std::string::npos);  // percentile markers
  CHECK(svg.find("href") == std::string::npos);   // no external assets
  CHECK_THROWS_AS((void)cmd_doublerank(c, "NOPE"), InsufficientDataError);
}

TEST_CASE("doublerank identity group has slope one") {
  std::vector<PaperRecord> records;
  for (int i = 0; i < 50; ++i) {
    PaperRecord r;
    r.id = "p" + std::to_string(i);
    r.year = 2015;
    r.citations = 100 - i;
    r.groups = {"ALL"};
    records.push_back(r);
  }
  const auto dir = scratch("ident");
  RunConfig c;
  c.input = write_corpus(dir, "c.jsonl", Corpus(records, {2014, 2017}));
  c.out = dir;
  (void)cmd_doublerank(c, "ALL");
  const auto fit = slurp(dir / "doublerank_ALL_fit.csv");
  CHECK(fit.find("full,1.000000,0.000000,1.000000,") != std::string::npos);
}

TEST_CASE("doublerank flags a zero-inflated group as upward") {
  const auto dir = scratch("zi");
  SynthSpec spec;
  spec.n = 22000;
  spec.seed = 5;
  spec.mu = 2.6;
  spec.sigma = 1.2;
  spec.extra_zero_fraction = 0.037;
  const auto corpus =
      make_global_corpus(spec, {{"", 20000, scenario::world()}, {"Z", 2000, scenario::zero_inflated()}});
  RunConfig c;
  c.input = write_corpus(dir, "c.jsonl", corpus);
  c.out = dir;
  (void)cmd_doublerank(c, "Z");
  CHECK(slurp(dir / "doublerank_Z_fit.csv").find(",upward,") != std::string::npos);
}

TEST_CASE("distfit outputs and errors") {
  const auto dir = scratch("df");
  auto c = fixture_config(dir);
  c.mc_runs = 1000;
  c.emit.svg = true;
  (void)cmd_distfit(c, "A");
  for (const char* f : {"distfit_A_hist.csv", "distfit_A_npp.csv", "distfit_A_ks.csv", "distfit_A_overlay.csv",
                        "distfit_A.md", "distfit_A_hist.svg", "distfit_A_npp.svg"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  CHECK(slurp(dir / "distfit_A_ks.csv").rfind("n,shift,mu,sigma,method,mc_runs,D,p_value,p_band\n", 0) == 0);
  (void)cmd_distfit(c, "C");
  CHECK(slurp(dir / "distfit_C_ks.csv").find("< 0.01") != std::string::npos);

  std::vector<PaperRecord> same;
  for (int i = 0; i < 6; ++i) {
    PaperRecord r;
    r.id = "s" + std::to_string(i);
    r.year = 2015;
    r.citations = 4;
    r.groups = {"G"};
    same.push_back(r);
  }
  RunConfig flat;
  flat.input = write_corpus(dir, "flat.jsonl", Corpus(same, {2014, 2017}));
  flat.out = dir;
  CHECK_THROWS_AS((void)cmd_distfit(flat, "G"), ValidationError);
  CHECK_THROWS_AS((void)cmd_distfit(c, "NOPE"), InsufficientDataError);
}

TEST_CASE("distfit p band on low-zero lognormal groups") {
  int above = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthSpec spec;
    spec.n = 300;
    spec.seed = seed;
    spec.mu = 3.5;
    spec.sigma = 1.0;
    const auto cites = sample_discrete_lognormal(spec);
    const auto r = ks_test(cites, auto_shift(cites), KsMethod::lilliefors, 1000, seed);
    above += p_value_band(r.p_value) == "> 0.15";
  }
  CHECK(above >= 6);
}

TEST_CASE("compare verdicts") {
  const auto dir = scratch("cmp");
  SynthSpec spec;
  spec.n = 20000;
  spec.seed = 8;
  spec.mu = 2.6;
  spec.sigma = 1.2;
  const auto corpus = make_global_corpus(spec, {{"", 16000, scenario::world()},
                                                {"IN", 2000, scenario::india_like()},
                                                {"JP", 2000, scenario::japan_like()},
                                                {"I1", 1500, IdealGenerator{0.8, true}},
                                                {"I2", 1500, IdealGenerator{0.8, true}}});
  RunConfig c;
  c.input = write_corpus(dir, "c.jsonl", corpus);
  c.out = dir;
  c.emit = {true, true, true};

  const auto ws = open_workspace(c);
  const auto ideal = compare_groups(ws.ranked, group_corpus(ws.corpus, c, "I1"), "I1",
                                    group_corpus(ws.corpus, c, "I2"), "I2", c.min_support, c.tolerance);
  CHECK(ideal.verdict == Verdict::comparable);

  const auto crossing = compare_groups(ws.ranked, group_corpus(ws.corpus, c, "IN"), "IN",
                                       group_corpus(ws.corpus, c, "JP"), "JP", c.min_support, c.tolerance);
  CHECK(crossing.verdict == Verdict::divergent);
  CHECK(crossing.ordering_reversed);

  (void)cmd_compare(c, "I1", "I1");
  const auto overlay = slurp(dir / "compare_I1_vs_I1_overlay.csv");
  std::istringstream in(overlay);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto last = line.rfind(',');
    const auto prev = line.rfind(',', last - 1);
    CHECK(line.substr(prev + 1, last - prev - 1) == line.substr(last + 1));
  }
  CHECK(slurp(dir / "compare_I1_vs_I1.md").find("comparable-by-single-indicator") != std::string::npos);

  (void)cmd_compare(c, "IN", "JP");
  CHECK(slurp(dir / "compare_IN_vs_JP.md").find("divergent-segments") != std::string::npos);
  CHECK(fs::exists(dir / "compare_IN_vs_JP.svg"));
}

TEST_CASE("report writes all tables") {
  const auto dir = scratch("report");
  (void)cmd_report(fixture_config(dir));
  for (const char* f :
       {"report.md", "report_summary.csv", "report_indicators.csv", "report_quartets.csv", "report_fits.csv"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  const auto summary = slurp(dir / "report_summary.csv");
  CHECK(summary.rfind("label,number,MNC,uncited_pct\nall,6000,", 0) == 0);
}

TEST_CASE("group plan parsing") {
  SynthSpec spec;
  spec.mu = 1.5;
  spec.sigma = 0.7;
  const auto base = parse_group_plan("G:10:base", spec);
  CHECK(base.count == 10);
  CHECK(std::get<LognormalGenerator>(base.generator).mu == 1.5);
  const auto ln = parse_group_plan("H:5:lognormal:2:0.5:0.25", spec);
  CHECK(std::get<LognormalGenerator>(ln.generator).extra_zero_fraction == 0.25);
  CHECK(std::get<IdealGenerator>(parse_group_plan("I:5:ideal:0.8", spec).generator).alpha == 0.8);
  CHECK(std::get<LognormalGenerator>(parse_group_plan("J:5:japan-like", spec).generator).mu ==
        scenario::japan_like().mu);
  for (const char* bad : {"G:10", "G:x:base", "G:10:lognormal:1", "G:10:pluto", ":10:base", "G:-1:base"}) {
    CHECK_THROWS_AS((void)parse_group_plan(bad, spec), ValidationError);
  }
}

TEST_CASE("simulate writes deterministic corpora") {
  const auto dir = scratch("sim");
  SimulateConfig s;
  s.spec.n = 1000;
  s.spec.seed = 7;
  s.spec.mu = 2.0;
  s.spec.sigma = 1.0;
  s.out_file = dir / "a.jsonl";
  (void)cmd_simulate(s);
  s.out_file = dir / "b.jsonl";
  const auto r = cmd_simulate(s);
  CHECK(slurp(dir / "a.jsonl") == slurp(dir / "b.jsonl"));
  CHECK(r.summary.rfind("n=1000 ", 0) == 0);

  s.spec.extra_zero_fraction = 0.1;
  const auto z = cmd_simulate(s);
  const auto pos = z.summary.find("zero_share=");
  CHECK(std::stod(z.summary.substr(pos + 11)) >= 0.1);

  s.spec.n = 100000;
  s.spec.mu = std::log(0.5);
  s.spec.extra_zero_fraction = 0.0;
  const auto half = cmd_simulate(s);
  const double share = std::stod(half.summary.substr(half.summary.find("zero_share=") + 11));
  CHECK(std::fabs(share - 0.5) < 0.015);

  s.spec.sigma = -1;
  CHECK_THROWS_AS((void)cmd_simulate(s), ValidationError);
}

TEST_CASE("emitted corpora round-trip through analyses") {
  const auto dir = scratch("rt");
  const auto original = load_corpus(kData / "fixture.jsonl", Format::jsonl);
  save_corpus(dir / "copy.csv", Format::csv, original);
  RunConfig a = fixture_config(dir / "a");
  RunConfig b = fixture_config(dir / "b");
  b.input = dir / "copy.csv";
  b.format = Format::csv;
  b.pub_window = original.pub_window();
  (void)cmd_indicators(a);
  (void)cmd_indicators(b);
  CHECK(slurp(dir / "a" / "indicators.csv") == slurp(dir / "b" / "indicators.csv"));
}

TEST_CASE("command-line exit codes and determinism") {
  const auto dir = scratch("cli");
  const std::string input = "--input " + (kData / "fixture.jsonl").string();
  CHECK(run_cli("indicators " + input + " --out " + (dir / "x").string() + " --emit csv --emit md") == 0);
  CHECK(run_cli("indicators " + input + " --out " + (dir / "y").string() + " --emit csv,md") == 0);
  CHECK(slurp(dir / "x" / "indicators.md") == slurp(dir / "y" / "indicators.md"));
  CHECK(slurp(dir / "x" / "indicators.csv") == slurp(kData / "golden" / "indicators.csv"));

  CHECK(run_cli("indicators --input " + (dir / "missing.jsonl").string()) == 2);
  CHECK(run_cli("indicators " + input + " --tolerance -1") == 1);
  CHECK(run_cli("indicators " + input + " --emit svg") == 1);
  CHECK(run_cli("indicators " + input + " --filter groups=NOPE") == 3);
  CHECK(run_cli("doublerank NOPE " + input + " --out " + dir.string()) == 3);
  CHECK(run_cli("bogus") == 1);
  CHECK(run_cli("--help") == 0);

  const auto sim_a = (dir / "s1.jsonl").string();
  const auto sim_b = (dir / "s2.jsonl").string();
  CHECK(run_cli("simulate --n 1000 --seed 7 --out " + sim_a) == 0);
  CHECK(run_cli("simulate --n 1000 --out " + sim_b + " --seed 7") == 0);
  CHECK(slurp(sim_a) == slurp(sim_b));
  CHECK(run_cli("simulate --n 10 --sigma 0 --out " + sim_a) == 1);

  // The environment variable replaces the default seed; --seed still wins.
  const auto env_out = (dir / "env.jsonl").string();
  CHECK(std::system(("CITELAW_SEED=7 " + kCli + " simulate --n 1000 --out " + env_out + " >/dev/null").c_str()) ==
        0);
  CHECK(slurp(env_out) == slurp(sim_a));
}
