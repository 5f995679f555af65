#include "citelaw/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "citelaw/error.hpp"
#include "citelaw/normal.hpp"
#include "citelaw/prng.hpp"
#include "citelaw/ranking.hpp"

namespace citelaw {

namespace {

std::int64_t discretize(double value, Discretization rounding) {
  // Far beyond any real citation count; keeps the cast defined.
  constexpr double kCap = 1e15;
  const double v = std::min(value, kCap);
  return static_cast<std::int64_t>(rounding == Discretization::nearest ? std::round(v) : std::floor(v));
}

std::vector<std::int64_t> draw_counts(std::size_t n, const LognormalGenerator& g, Discretization rounding,
                                      Prng& rng) {
  std::vector<std::int64_t> counts(n);
  for (auto& c : counts) {
    const double z = inv_normal_cdf(rng.uniform_open());
    c = discretize(std::exp(g.mu + g.sigma * z), rounding);
  }
  const auto zeros = static_cast<std::size_t>(std::llround(g.extra_zero_fraction * static_cast<double>(n)));
  if (zeros > 0) {
    // Partial Fisher-Yates: the first `zeros` slots of `index` end up a
    // uniformly random subset.
    std::vector<std::size_t> index(n);
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t i = 0; i < zeros; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(index[i], index[j]);
      counts[index[i]] = 0;
    }
  }
  return counts;
}

void validate_generator(const LognormalGenerator& g) {
  if (!(g.sigma > 0.0) || !std::isfinite(g.sigma)) throw ValidationError("sigma must be positive");
  if (!std::isfinite(g.mu)) throw ValidationError("mu must be finite");
  if (!(g.extra_zero_fraction >= 0.0 && g.extra_zero_fraction < 1.0)) {
    throw ValidationError("extra_zero_fraction must lie in [0, 1)");
  }
}

std::string synthetic_id(std::size_t index, std::size_t total) {
  const int width = std::max(6, static_cast<int>(std::to_string(total).size()));
  char buf[32];
  std::snprintf(buf, sizeof buf, "S%0*zu", width, index);
  return buf;
}

}  // namespace

void SynthSpec::validate() const {
  validate_generator({mu, sigma, extra_zero_fraction});
  if (pub_window.first > pub_window.last) throw ValidationError("publication window is reversed");
}

std::vector<std::int64_t> sample_discrete_lognormal(const SynthSpec& spec) {
  spec.validate();
  Prng rng(spec.seed);
  return draw_counts(spec.n, {spec.mu, spec.sigma, spec.extra_zero_fraction}, spec.rounding, rng);
}

std::vector<std::size_t> sample_ideal_subsample(std::size_t n_global, std::size_t n_local, double alpha,
                                                std::uint64_t seed, bool jitter) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");
  if (n_local == 0) return {};
  if (n_local > n_global) {
    throw ValidationError("local size " + std::to_string(n_local) + " exceeds global size " +
                          std::to_string(n_global));
  }
  std::vector<std::size_t> ranks(n_local);
  std::size_t previous = 0;
  const double ng = static_cast<double>(n_global);
  const double nl = static_cast<double>(n_local);
  for (std::size_t i = 0; i < n_local; ++i) {
    const double target = std::round(ng * std::pow(static_cast<double>(i + 1) / nl, 1.0 / alpha));
    auto g = static_cast<std::size_t>(std::max(1.0, target));
    g = std::max(g, previous + 1);
    if (g > n_global) {
      throw ValidationError("ideal subsample infeasible: rank collisions push past " + std::to_string(n_global));
    }
    ranks[i] = previous = g;
  }

  if (jitter) {
    Prng rng(seed);
    const auto base = ranks;
    for (std::size_t i = 0; i < n_local; ++i) {
      const std::size_t left_neighbour = i == 0 ? 0 : base[i - 1];
      const std::size_t right_neighbour = i + 1 == n_local ? n_global + 1 : base[i + 1];
      const std::size_t down = (base[i] - left_neighbour - 1) / 2;
      const std::size_t up = (right_neighbour - base[i] - 1) / 2;
      const auto offset = static_cast<std::size_t>(rng.below(down + up + 1));
      ranks[i] = base[i] - down + offset;
    }
  }
  return ranks;
}

Corpus make_global_corpus(const SynthSpec& spec, const std::vector<GroupPlan>& plans) {
  spec.validate();
  std::size_t planned = 0;
  for (const auto& plan : plans) {
    if (std::holds_alternative<LognormalGenerator>(plan.generator)) {
      validate_generator(std::get<LognormalGenerator>(plan.generator));
      planned += plan.count;
    }
  }
  if (planned != spec.n) {
    throw ValidationError("plan size mismatch: lognormal groups cover " + std::to_string(planned) +
                          " records but the corpus size is " + std::to_string(spec.n));
  }

  Prng year_rng = Prng::derived(spec.seed, 0);
  const auto span = static_cast<std::uint64_t>(spec.pub_window.last - spec.pub_window.first + 1);
  std::vector<PaperRecord> records;
  records.reserve(spec.n);
  for (std::size_t j = 0; j < plans.size(); ++j) {
    const auto* gen = std::get_if<LognormalGenerator>(&plans[j].generator);
    if (!gen) continue;
    Prng rng = Prng::derived(spec.seed, j + 1);
    for (auto c : draw_counts(plans[j].count, *gen, spec.rounding, rng)) {
      PaperRecord r;
      r.id = synthetic_id(records.size() + 1, spec.n);
      r.year = spec.pub_window.first + static_cast<int>(year_rng.below(span));
      r.citations = c;
      if (!plans[j].label.empty()) r.groups.push_back(plans[j].label);
      records.push_back(std::move(r));
    }
  }

  const bool has_overlay = std::any_of(plans.begin(), plans.end(), [](const GroupPlan& p) {
    return std::holds_alternative<IdealGenerator>(p.generator);
  });
  if (has_overlay) {
    if (records.empty()) throw ValidationError("ideal groups need lognormal records to overlay");
    const Corpus base(records, spec.pub_window);
    const RankedCorpus ranked(base, spec.pub_window.last + 1);
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < records.size(); ++i) position.emplace(records[i].id, i);
    for (std::size_t j = 0; j < plans.size(); ++j) {
      const auto* ideal = std::get_if<IdealGenerator>(&plans[j].generator);
      if (!ideal) continue;
      if (plans[j].label.empty()) throw ValidationError("ideal groups need a label");
      const auto ranks = sample_ideal_subsample(records.size(), plans[j].count, ideal->alpha,
                                                Prng::derived(spec.seed, j + 1).next(), ideal->jitter);
      for (auto g : ranks) {
        auto& r = records[position.at(ranked.at_rank(g).id)];
        if (!r.has_group(plans[j].label)) r.groups.push_back(plans[j].label);
      }
    }
  }
  return Corpus(std::move(records), spec.pub_window);
}

namespace scenario {

LognormalGenerator world() { return {2.6, 1.2, 0.037}; }
LognormalGenerator journal_like() { return {3.8, 0.9, 0.0}; }
LognormalGenerator zero_inflated() { return {2.0, 1.2, 0.2}; }
LognormalGenerator india_like() { return {2.6, 0.85, 0.02}; }
LognormalGenerator japan_like() { return {2.4, 1.2, 0.12}; }

LognormalGenerator by_name(std::string_view name) {
  if (name == "world") return world();
  if (name == "journal-like") return journal_like();
  if (name == "zero-inflated") return zero_inflated();
  if (name == "india-like") return india_like();
  if (name == "japan-like") return japan_like();
  throw ValidationError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace scenario

}  // namespace citelaw
