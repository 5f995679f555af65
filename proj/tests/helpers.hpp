#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citelaw/corpus.hpp"

namespace testutil {

inline citelaw::PaperRecord rec(std::string id, int year, std::int64_t citations,
                                std::vector<std::string> groups = {}) {
  citelaw::PaperRecord r;
  r.id = std::move(id);
  r.year = year;
  r.citations = citations;
  r.groups = std::move(groups);
  return r;
}

inline citelaw::Corpus corpus(std::vector<citelaw::PaperRecord> records, citelaw::YearWindow window = {2014, 2017}) {
  return citelaw::Corpus(std::move(records), window);
}

// Global corpus of n papers with distinct citation counts n-1, ..., 0 so that
// record "p<k>" has global rank k + 1.
inline citelaw::Corpus ladder(std::size_t n) {
  std::vector<citelaw::PaperRecord> records;
  for (std::size_t k = 0; k < n; ++k) {
    records.push_back(rec("p" + std::to_string(k), 2015, static_cast<std::int64_t>(n - 1 - k)));
  }
  return corpus(std::move(records));
}

inline std::vector<std::string> ids_at_ranks(const std::vector<std::size_t>& ranks) {
  std::vector<std::string> ids;
  for (auto r : ranks) ids.push_back("p" + std::to_string(r - 1));
  return ids;
}

}  // namespace testutil
