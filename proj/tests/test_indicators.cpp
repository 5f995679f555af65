#include <doctest.h>

#include <vector>

#include "citelaw/error.hpp"
#include "citelaw/indicators.hpp"
#include "citelaw/prng.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace citelaw;

namespace {

PercentileProfile with_ratios(std::array<double, 4> values, std::array<bool, 4> supported = {true, true, true, true}) {
  PercentileProfile p;
  for (std::size_t i = 0; i < 4; ++i) p.ratios[i] = RatioCell{values[i], supported[i]};
  return p;
}

}  // namespace

TEST_CASE("mean number of citations and uncited share") {
  const std::vector<std::int64_t> a = {0, 1, 2, 3};
  CHECK(mnc(a) == 1.5);
  const std::vector<std::int64_t> zeros = {0, 0, 0};
  CHECK(mnc(zeros) == 0.0);
  CHECK(uncited_share(zeros) == 1.0);
  const std::vector<std::int64_t> b = {0, 0, 1, 4};
  CHECK(uncited_share(b) == 0.5);
  const std::vector<std::int64_t> none = {3, 9};
  CHECK(uncited_share(none) == 0.0);
  CHECK_THROWS_AS((void)mnc(std::vector<std::int64_t>{}), InsufficientDataError);
  CHECK_THROWS_AS((void)uncited_share(std::vector<std::int64_t>{}), InsufficientDataError);
}

TEST_CASE("pearson identities and errors") {
  const std::vector<double> xs = {1.0, 2.5, -3.0, 4.25, 0.5};
  std::vector<double> neg;
  for (double x : xs) neg.push_back(-x);
  CHECK(pearson(xs, xs) == 1.0);
  CHECK(pearson(xs, neg) == -1.0);
  const std::vector<double> flat = {2, 2, 2, 2, 2};
  CHECK_THROWS_AS((void)pearson(xs, flat), ValidationError);
  const std::vector<double> short_ys = {1, 2, 3};
  CHECK_THROWS_AS((void)pearson(xs, short_ys), ValidationError);
}

TEST_CASE("pearson matches the two-pass oracle on seeded vectors") {
  Prng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = 3 + rng.below(200);
    std::vector<double> xs(n), ys(n);
    const double slope = rng.uniform() * 4 - 2;
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = rng.uniform() * 100 - 50;
      ys[i] = slope * xs[i] + (rng.uniform() - 0.5) * 30;
    }
    CHECK(std::fabs(pearson(xs, ys) - oracle::pearson(xs, ys)) <= 1e-12);
  }
}

TEST_CASE("relative spread") {
  const std::vector<double> same = {0.1, 0.1, 0.1};
  CHECK(relative_spread(same) == 0.0);
  const std::vector<double> one = {5.0};
  CHECK(relative_spread(one) == 0.0);
  const std::vector<double> v = {1.0, 3.0};
  CHECK(relative_spread(v) == doctest::Approx(1.0));
}

TEST_CASE("conformity classes") {
  SUBCASE("decreasing row, spread just over tolerance") {
    const auto c = classify_conformity(with_ratios({0.104, 0.102, 0.098, 0.088}));
    CHECK(c.spread == doctest::Approx(0.163).epsilon(0.005));
    CHECK(c.kind == Conformity::decreasing);
  }
  SUBCASE("all equal") {
    const auto c = classify_conformity(with_ratios({0.1, 0.1, 0.1, 0.1}));
    CHECK(c.kind == Conformity::ideal);
    CHECK(c.spread == 0.0);
  }
  SUBCASE("increasing row") {
    CHECK(classify_conformity(with_ratios({0.059, 0.080, 0.088, 0.107})).kind == Conformity::increasing);
  }
  SUBCASE("irregular row") {
    CHECK(classify_conformity(with_ratios({0.06, 0.12, 0.07, 0.11})).kind == Conformity::irregular);
  }
  SUBCASE("non-strict monotone is irregular") {
    CHECK(classify_conformity(with_ratios({0.05, 0.08, 0.08, 0.11})).kind == Conformity::irregular);
  }
  SUBCASE("ties inside tolerance fold into ideal first") {
    CHECK(classify_conformity(with_ratios({0.100, 0.104, 0.108, 0.110})).kind == Conformity::ideal);
  }
  SUBCASE("unsupported ratios are skipped") {
    const auto c = classify_conformity(with_ratios({0.05, 0.08, 0.11, 0.9}, {true, true, true, false}));
    CHECK(c.supported == 3);
    CHECK(c.kind == Conformity::increasing);
    CHECK(classify_conformity(with_ratios({0.05, 0.08, 0.11, 0.9}, {true, false, true, false})).kind ==
          Conformity::insufficient);
  }
  SUBCASE("tolerance is a parameter") {
    CHECK(classify_conformity(with_ratios({0.104, 0.102, 0.098, 0.088}), 0.2).kind == Conformity::ideal);
  }
}

TEST_CASE("quartet on self-evaluation") {
  const auto c = testutil::ladder(1000);
  const RankedCorpus ranked(c, 2018);
  const auto q = quartet(percentile_profile(ranked, c.ids()));
  CHECK(q.size == 1000);
  CHECK(q.lower_tail.value == doctest::Approx(0.5));
  CHECK(q.mid.value == doctest::Approx(0.5));
  CHECK(q.upper_extreme.value == doctest::Approx(0.1));
  CHECK(q.tails_agree() == true);

  IndicatorQuartet apart;
  apart.lower_tail = {0.5, true};
  apart.mid = {0.3, true};
  CHECK(apart.tails_agree() == false);
  apart.mid.supported = false;
  CHECK_FALSE(apart.tails_agree().has_value());
}

TEST_CASE("indicator row") {
  std::vector<PaperRecord> records;
  for (int k = 0; k < 200; ++k) {
    records.push_back(testutil::rec("p" + std::to_string(k), 2015, 199 - k, k % 2 == 0 ? std::vector<std::string>{"A"}
                                                                                      : std::vector<std::string>{}));
  }
  const auto global = testutil::corpus(records);
  const RankedCorpus ranked(global, 2018);
  SelectionFilter f;
  f.groups = {"A"};
  const auto local = select(global, f).corpus;
  const auto row = indicator_row("A", ranked, local, 1);
  CHECK(row.label == "A");
  CHECK(row.total == 100);
  CHECK(row.p0 == 0.0);  // the paper with 0 citations has odd index
  CHECK(row.mnc == doctest::Approx(100.0));
  CHECK(row.profile.count_at(1) == 1);
  CHECK(row.profile.count_at(10) == 10);
  CHECK(row.conformity.kind == Conformity::ideal);
}
