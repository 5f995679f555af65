#include "citelaw/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "citelaw/error.hpp"

namespace citelaw {

bool ranks_before(const PaperRecord& a, const PaperRecord& b, int reference_year) {
  if (a.citations != b.citations) return a.citations > b.citations;
  // citations/(ref - year) compared exactly by cross-multiplication; both
  // denominators are positive.
  const auto age_a = static_cast<std::int64_t>(reference_year - a.year);
  const auto age_b = static_cast<std::int64_t>(reference_year - b.year);
  const auto lhs = a.citations * age_b;
  const auto rhs = b.citations * age_a;
  if (lhs != rhs) return lhs > rhs;
  if (a.year != b.year) return a.year > b.year;
  return a.id < b.id;
}

RankedCorpus::RankedCorpus(const Corpus& corpus, int reference_year)
    : ordered_(corpus.records()), reference_year_(reference_year) {
  if (corpus.empty()) throw InsufficientDataError("cannot rank an empty corpus");
  if (reference_year <= corpus.pub_window().last) {
    throw ValidationError("reference year " + std::to_string(reference_year) +
                          " must be after the publication window end " +
                          std::to_string(corpus.pub_window().last));
  }
  std::sort(ordered_.begin(), ordered_.end(),
            [reference_year](const PaperRecord& a, const PaperRecord& b) {
              return ranks_before(a, b, reference_year);
            });
  rank_of_.reserve(ordered_.size());
  for (std::size_t i = 0; i < ordered_.size(); ++i) rank_of_.emplace(ordered_[i].id, i + 1);
}

std::optional<std::size_t> RankedCorpus::rank_of(const std::string& id) const {
  auto it = rank_of_.find(id);
  if (it == rank_of_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> RankedCorpus::ranks_of(std::span<const std::string> ids) const {
  std::vector<std::size_t> ranks;
  ranks.reserve(ids.size());
  for (const auto& id : ids) {
    auto rank = rank_of(id);
    if (!rank) throw ValidationError("local id '" + id + "' is not in the global corpus");
    ranks.push_back(*rank);
  }
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  return ranks;
}

RankedCorpus total_order(const Corpus& corpus, int reference_year) {
  return RankedCorpus(corpus, reference_year);
}

int default_reference_year(const Corpus& corpus) { return corpus.pub_window().last + 1; }

DoubleRankSeries double_rank_from_ranks(std::vector<std::size_t> global_ranks, std::size_t n_global) {
  std::sort(global_ranks.begin(), global_ranks.end());
  global_ranks.erase(std::unique(global_ranks.begin(), global_ranks.end()), global_ranks.end());
  DoubleRankSeries series;
  series.n_global = n_global;
  series.n_local = global_ranks.size();
  series.pairs.reserve(global_ranks.size());
  for (std::size_t i = 0; i < global_ranks.size(); ++i) {
    if (global_ranks[i] < 1 || global_ranks[i] > n_global) {
      throw ValidationError("global rank " + std::to_string(global_ranks[i]) + " outside 1.." +
                            std::to_string(n_global));
    }
    series.pairs.push_back({i + 1, global_ranks[i]});
  }
  return series;
}

DoubleRankSeries double_rank(const RankedCorpus& global, std::span<const std::string> local_ids) {
  return double_rank_from_ranks(global.ranks_of(local_ids), global.size());
}

std::size_t top_boundary(double percent, std::size_t n_global) {
  if (!(percent > 0.0 && percent <= 100.0)) {
    throw ValidationError("percentile must lie in (0, 100], got " + std::to_string(percent));
  }
  if (percent == 100.0) return n_global;
  // A relative nudge absorbs representation error in e.g. 0.3 * n / 100 so
  // that exact integer boundaries are not floored one below.
  const double exact = percent * static_cast<double>(n_global) / 100.0;
  return static_cast<std::size_t>(std::floor(exact * (1.0 + 1e-12)));
}

namespace {

std::size_t count_within(std::span<const std::size_t> sorted_ranks, std::size_t boundary) {
  return static_cast<std::size_t>(
      std::upper_bound(sorted_ranks.begin(), sorted_ranks.end(), boundary) - sorted_ranks.begin());
}

}  // namespace

std::size_t top_count(const RankedCorpus& global, std::span<const std::string> local_ids, double percent) {
  const auto boundary = top_boundary(percent, global.size());
  const auto ranks = global.ranks_of(local_ids);
  if (percent == 100.0) return ranks.size();
  return count_within(ranks, boundary);
}

std::size_t PercentileProfile::count_at(double percent) const {
  for (std::size_t i = 0; i < kProfilePercents.size(); ++i) {
    if (kProfilePercents[i] == percent) return counts[i];
  }
  throw ValidationError("percentile " + std::to_string(percent) + " is not part of the profile");
}

std::size_t PercentileProfile::supported_ratio_count() const {
  return static_cast<std::size_t>(
      std::count_if(ratios.begin(), ratios.end(), [](const RatioCell& r) { return r.supported; }));
}

PercentileProfile profile_from_counts(std::size_t total, std::size_t n_global,
                                      const std::array<std::size_t, 7>& counts, std::size_t min_support) {
  if (min_support < 1) throw ValidationError("min_support must be at least 1");
  PercentileProfile profile;
  profile.total = total;
  profile.n_global = n_global;
  profile.min_support = min_support;
  profile.counts = counts;

  auto cell = [&](double top, double bottom) {
    const auto numerator = profile.count_at(top);
    const auto denominator = profile.count_at(bottom);
    RatioCell out;
    out.supported = numerator >= min_support && denominator > 0;
    if (denominator > 0) out.value = static_cast<double>(numerator) / static_cast<double>(denominator);
    return out;
  };
  profile.ratios[0] = cell(10, 100);
  profile.ratios[1] = cell(5, 50);
  profile.ratios[2] = cell(3, 30);
  profile.ratios[3] = cell(1, 10);
  return profile;
}

PercentileProfile percentile_profile_from_ranks(std::span<const std::size_t> sorted_global_ranks,
                                                std::size_t n_global, std::size_t min_support) {
  std::array<std::size_t, 7> counts{};
  for (std::size_t i = 0; i < kProfilePercents.size(); ++i) {
    counts[i] = kProfilePercents[i] == 100.0
                    ? sorted_global_ranks.size()
                    : count_within(sorted_global_ranks, top_boundary(kProfilePercents[i], n_global));
  }
  return profile_from_counts(sorted_global_ranks.size(), n_global, counts, min_support);
}

PercentileProfile percentile_profile(const RankedCorpus& global, std::span<const std::string> local_ids,
                                     std::size_t min_support) {
  const auto ranks = global.ranks_of(local_ids);
  return percentile_profile_from_ranks(ranks, global.size(), min_support);
}

}  // namespace citelaw
