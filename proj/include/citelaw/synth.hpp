#pragma once

// Seeded synthetic corpora: discretized lognormal citation counts with
// optional zero inflation, and ideal power-law subsamples of a global ranking.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "citelaw/corpus.hpp"

namespace citelaw {

enum class Discretization { nearest, floor };

struct SynthSpec {
  std::size_t n = 0;
  double mu = 0.0;
  double sigma = 1.0;
  double extra_zero_fraction = 0.0;  // [0, 1)
  std::uint64_t seed = 0;
  Discretization rounding = Discretization::nearest;
  YearWindow pub_window{2014, 2017};

  void validate() const;
};

// For each draw: u uniform in (0,1), z = inv_normal_cdf(u),
// c = round(exp(mu + sigma z)) (or floor). Then round(extra_zero_fraction * n)
// distinct positions are set to zero.
[[nodiscard]] std::vector<std::int64_t> sample_discrete_lognormal(const SynthSpec& spec);

// Global ranks (ascending, within [1, n_global]) of a local group whose ranks
// follow local = C * global^alpha exactly: g(i) = round(n_global (i/n_local)^(1/alpha)),
// collisions bumped upward. With jitter, each rank moves uniformly within half
// the gap to its neighbours, which keeps the sequence strictly increasing.
[[nodiscard]] std::vector<std::size_t> sample_ideal_subsample(std::size_t n_global, std::size_t n_local,
                                                              double alpha, std::uint64_t seed,
                                                              bool jitter = false);

struct LognormalGenerator {
  double mu = 0.0;
  double sigma = 1.0;
  double extra_zero_fraction = 0.0;
};

// Label `count` records already generated by the lognormal plans, chosen as an
// ideal subsample of the resulting global ranking.
struct IdealGenerator {
  double alpha = 1.0;
  bool jitter = true;
};

struct GroupPlan {
  std::string label;  // empty: unlabelled background papers
  std::size_t count = 0;
  std::variant<LognormalGenerator, IdealGenerator> generator;
};

// Records "S000001", ... in plan order; lognormal plan counts must sum to
// spec.n. Years are uniform over spec.pub_window. Plan j samples from
// Prng::derived(seed, j + 1); years come from stream 0.
[[nodiscard]] Corpus make_global_corpus(const SynthSpec& spec, const std::vector<GroupPlan>& plans);

// Calibration presets. None of these are measured values; they are tuned so
// the synthetic scenarios reproduce qualitative double-rank shapes against
// the `world` background (about 4% uncited).
namespace scenario {
[[nodiscard]] LognormalGenerator world();
// Shifted right, narrower, no uncited papers (high-impact journal).
[[nodiscard]] LognormalGenerator journal_like();
// Shifted left with a large excess of zeros.
[[nodiscard]] LognormalGenerator zero_inflated();
// Compressed spread, few zeros: steep top segment, shallow bottom.
[[nodiscard]] LognormalGenerator india_like();
// Excess zeros, world-like top: shallow top segment, steep bottom.
[[nodiscard]] LognormalGenerator japan_like();

// Looks up a preset by name ("world", "journal-like", ...). Throws ValidationError.
[[nodiscard]] LognormalGenerator by_name(std::string_view name);
}  // namespace scenario

}  // namespace citelaw
