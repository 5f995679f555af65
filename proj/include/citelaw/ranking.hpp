#pragma once

// Global ranking under a strict total order and the rank-based quantities
// derived from it: double-rank series and top-percentile counts.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "citelaw/corpus.hpp"

namespace citelaw {

// Rank 1 is the most cited paper. Ties in citation count are broken by
// citations per year (descending), then publication year (descending), then
// id (ascending, bytewise).
class RankedCorpus {
 public:
  RankedCorpus(const Corpus& corpus, int reference_year);

  [[nodiscard]] std::size_t size() const { return ordered_.size(); }
  [[nodiscard]] int reference_year() const { return reference_year_; }
  [[nodiscard]] const std::vector<PaperRecord>& ordered() const { return ordered_; }
  // `rank` is 1-based.
  [[nodiscard]] const PaperRecord& at_rank(std::size_t rank) const { return ordered_.at(rank - 1); }
  [[nodiscard]] std::optional<std::size_t> rank_of(const std::string& id) const;

  // Sorted global ranks of the given ids, duplicates removed.
  // Throws ValidationError naming the first id not present in the corpus.
  [[nodiscard]] std::vector<std::size_t> ranks_of(std::span<const std::string> ids) const;

 private:
  std::vector<PaperRecord> ordered_;
  std::unordered_map<std::string, std::size_t> rank_of_;
  int reference_year_;
};

// The ordering predicate used by RankedCorpus: true when `a` ranks ahead of `b`.
[[nodiscard]] bool ranks_before(const PaperRecord& a, const PaperRecord& b, int reference_year);

[[nodiscard]] RankedCorpus total_order(const Corpus& corpus, int reference_year);

// Default reference year for citations-per-year: the year after the
// publication window closes.
[[nodiscard]] int default_reference_year(const Corpus& corpus);

struct RankPair {
  std::size_t local_rank;
  std::size_t global_rank;
  friend bool operator==(const RankPair&, const RankPair&) = default;
};

struct DoubleRankSeries {
  std::vector<RankPair> pairs;  // sorted by local rank
  std::size_t n_local = 0;
  std::size_t n_global = 0;
};

[[nodiscard]] DoubleRankSeries double_rank(const RankedCorpus& global, std::span<const std::string> local_ids);
// Same, from global ranks that are already known.
[[nodiscard]] DoubleRankSeries double_rank_from_ranks(std::vector<std::size_t> global_ranks, std::size_t n_global);

// Size of the global top x%: floor(x * n / 100).
[[nodiscard]] std::size_t top_boundary(double percent, std::size_t n_global);

[[nodiscard]] std::size_t top_count(const RankedCorpus& global, std::span<const std::string> local_ids,
                                    double percent);

inline constexpr std::array<double, 7> kProfilePercents = {1, 3, 5, 10, 30, 50, 100};
inline constexpr std::size_t kDefaultMinSupport = 10;

// The four serial ratios that are all equal under the ideal rank power law.
enum class SerialRatio : std::size_t {
  top10_over_all = 0,    // P_top10% / P
  top5_over_top50 = 1,   // P_top5% / P_top50%
  top3_over_top30 = 2,   // P_top3% / P_top30%
  top1_over_top10 = 3,   // P_top1% / P_top10%
};

struct RatioCell {
  double value = 0.0;
  bool supported = false;
};

struct PercentileProfile {
  std::size_t total = 0;  // P
  std::size_t n_global = 0;
  std::size_t min_support = kDefaultMinSupport;
  std::array<std::size_t, kProfilePercents.size()> counts{};  // aligned with kProfilePercents
  std::array<RatioCell, 4> ratios{};                            // indexed by SerialRatio

  // P_top x% for x in kProfilePercents.
  [[nodiscard]] std::size_t count_at(double percent) const;
  [[nodiscard]] const RatioCell& ratio(SerialRatio which) const {
    return ratios[static_cast<std::size_t>(which)];
  }
  [[nodiscard]] std::size_t supported_ratio_count() const;
};

// Builds the profile from counts; the ratio support rule lives here.
[[nodiscard]] PercentileProfile profile_from_counts(std::size_t total, std::size_t n_global,
                                                    const std::array<std::size_t, 7>& counts,
                                                    std::size_t min_support);

[[nodiscard]] PercentileProfile percentile_profile(const RankedCorpus& global,
                                                   std::span<const std::string> local_ids,
                                                   std::size_t min_support = kDefaultMinSupport);
[[nodiscard]] PercentileProfile percentile_profile_from_ranks(std::span<const std::size_t> sorted_global_ranks,
                                                              std::size_t n_global,
                                                              std::size_t min_support = kDefaultMinSupport);

}  // namespace citelaw
