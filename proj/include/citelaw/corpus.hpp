#pragma once

// Publication records, corpus container and sub-corpus selection.
//
// Two on-disk formats are supported.
//
// JSONL, one object per line:
//   {"id": "10.1/x", "year": 2015, "citations": 12, "journal": "J1",
//    "groups": ["JP", "US"], "topic": "graphene"}
// plus two optional kinds of metadata line:
//   {"meta": {"pub_window": [2014, 2017], "citation_window": "2019-2022"}}
//   {"journal_meta": {"name": "J1", "jif": 4.0}}
// Unknown keys on record lines are kept verbatim in PaperRecord::extra.
//
// CSV with a header row: id,year,citations,journal,groups,topic where
// groups is '|'-separated. Additional columns are kept as string extras.
// Journal metadata for CSV input comes from a sidecar CSV "name,jif".

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace citelaw {

struct YearWindow {
  int first = 0;
  int last = 0;

  [[nodiscard]] bool contains(int year) const { return year >= first && year <= last; }
  friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

struct PaperRecord {
  std::string id;
  int year = 0;
  std::int64_t citations = 0;
  std::optional<std::string> journal;
  std::vector<std::string> groups;  // labels, no duplicates, input order kept
  std::optional<std::string> topic;
  nlohmann::json extra = nlohmann::json::object();

  [[nodiscard]] bool has_group(const std::string& label) const;
  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct JournalMeta {
  std::string name;
  std::optional<double> jif;
  friend bool operator==(const JournalMeta&, const JournalMeta&) = default;
};

// Immutable once constructed. The constructor enforces the corpus invariants
// (unique ids, nonnegative citations, years inside the publication window).
class Corpus {
 public:
  Corpus(std::vector<PaperRecord> records, YearWindow pub_window,
         std::string citation_window_note = {},
         std::map<std::string, JournalMeta> journals = {});

  [[nodiscard]] const std::vector<PaperRecord>& records() const { return records_; }
  [[nodiscard]] std::size_t size() const { return records_.size(); }
  [[nodiscard]] bool empty() const { return records_.empty(); }
  [[nodiscard]] const YearWindow& pub_window() const { return pub_window_; }
  [[nodiscard]] const std::string& citation_window_note() const { return citation_window_note_; }
  [[nodiscard]] const std::map<std::string, JournalMeta>& journals() const { return journals_; }

  [[nodiscard]] std::vector<std::string> ids() const;
  [[nodiscard]] std::vector<std::int64_t> citations() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<PaperRecord> records_;
  YearWindow pub_window_;
  std::string citation_window_note_;
  std::map<std::string, JournalMeta> journals_;
};

enum class Format { jsonl, csv };

[[nodiscard]] Format parse_format(const std::string& name);

struct LoadOptions {
  // Overrides any window declared in the file. Without either, the window is
  // the observed [min year, max year].
  std::optional<YearWindow> pub_window;
  std::optional<std::filesystem::path> journal_sidecar;
};

[[nodiscard]] Corpus load_corpus(const std::filesystem::path& path, Format format,
                                 const LoadOptions& options = {});
[[nodiscard]] Corpus read_corpus_jsonl(std::istream& in, const LoadOptions& options = {});
[[nodiscard]] Corpus read_corpus_csv(std::istream& in, const LoadOptions& options = {});
[[nodiscard]] std::map<std::string, JournalMeta> read_journal_sidecar(std::istream& in);

void write_corpus_jsonl(std::ostream& out, const Corpus& corpus);
void write_corpus_csv(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, Format format, const Corpus& corpus);

struct SelectionFilter {
  std::vector<std::string> groups;  // record must carry every listed label
  std::optional<std::string> journal;
  std::optional<std::string> topic;
  std::optional<YearWindow> years;
  // Keep only records with exactly one group label ("domestic" papers).
  bool single_group_only = false;

  [[nodiscard]] bool matches(const PaperRecord& record) const;
  [[nodiscard]] bool is_empty() const;
};

struct Selection {
  Corpus corpus;
  // Filter labels (group, journal, topic) that matched no record at all.
  std::vector<std::string> unmatched_labels;
};

[[nodiscard]] Selection select(const Corpus& corpus, const SelectionFilter& filter);

// Parses "groups=JP", "journal=Nature", "topic=graphene", "year=2014-2016"
// (or "year=2015") into the filter.
void apply_filter_term(SelectionFilter& filter, const std::string& term);

// Distinct labels in first-seen order.
[[nodiscard]] std::vector<std::string> group_labels(const Corpus& corpus);
[[nodiscard]] std::vector<std::string> journal_labels(const Corpus& corpus);

}  // namespace citelaw
