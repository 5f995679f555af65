#include "citelaw/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "citelaw/csv.hpp"
#include "citelaw/error.hpp"

namespace citelaw {

namespace {

using nlohmann::json;

std::string at_line(std::size_t line) {
  return line ? "line " + std::to_string(line) + ": " : std::string{};
}

void add_group(PaperRecord& record, std::string label) {
  if (label.empty()) return;
  if (std::find(record.groups.begin(), record.groups.end(), label) == record.groups.end()) {
    record.groups.push_back(std::move(label));
  }
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line, const char* what) {
  Int value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ValidationError(at_line(line) + what + " is not an integer: '" + std::string(text) + "'");
  }
  return value;
}

double parse_double(const std::string& text, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ValidationError(at_line(line) + what + " is not a number: '" + text + "'");
  }
}

YearWindow resolve_window(const std::vector<PaperRecord>& records,
                          const std::optional<YearWindow>& declared,
                          const LoadOptions& options) {
  if (options.pub_window) return *options.pub_window;
  if (declared) return *declared;
  if (records.empty()) return {};
  auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                      [](const auto& a, const auto& b) { return a.year < b.year; });
  return {lo->year, hi->year};
}

// Row-level checks done while loading so errors carry the row number.
class RowChecker {
 public:
  void check(const PaperRecord& record, std::size_t line) {
    if (record.id.empty()) throw ValidationError(at_line(line) + "empty id");
    if (record.citations < 0) {
      throw ValidationError(at_line(line) + "negative citations (" +
                            std::to_string(record.citations) + ") for id '" + record.id + "'");
    }
    if (!seen_.insert(record.id).second) {
      throw ValidationError(at_line(line) + "duplicate id '" + record.id + "'");
    }
    lines_.push_back(line);
  }

  void check_years(const std::vector<PaperRecord>& records, const YearWindow& window) const {
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!window.contains(records[i].year)) {
        throw ValidationError(at_line(lines_[i]) + "year " + std::to_string(records[i].year) +
                              " outside publication window " + std::to_string(window.first) + "-" +
                              std::to_string(window.last));
      }
    }
  }

 private:
  std::unordered_set<std::string> seen_;
  std::vector<std::size_t> lines_;
};

std::optional<std::string> optional_string(const json& value, std::size_t line, const char* key) {
  if (value.is_null()) return std::nullopt;
  if (!value.is_string()) throw ValidationError(at_line(line) + "'" + key + "' must be a string");
  auto text = value.get<std::string>();
  if (text.empty()) return std::nullopt;
  return text;
}

PaperRecord record_from_json(const json& row, std::size_t line) {
  PaperRecord record;
  for (const char* key : {"id", "year", "citations"}) {
    if (!row.contains(key)) throw ValidationError(at_line(line) + "missing required field '" + key + "'");
  }
  if (!row["id"].is_string()) throw ValidationError(at_line(line) + "'id' must be a string");
  if (!row["year"].is_number_integer()) throw ValidationError(at_line(line) + "'year' must be an integer");
  if (!row["citations"].is_number_integer()) {
    throw ValidationError(at_line(line) + "'citations' must be an integer");
  }
  record.id = row["id"].get<std::string>();
  record.year = row["year"].get<int>();
  record.citations = row["citations"].get<std::int64_t>();

  for (const auto& [key, value] : row.items()) {
    if (key == "id" || key == "year" || key == "citations") continue;
    if (key == "journal") {
      record.journal = optional_string(value, line, "journal");
    } else if (key == "topic") {
      record.topic = optional_string(value, line, "topic");
    } else if (key == "groups") {
      if (value.is_null()) continue;
      if (!value.is_array()) throw ValidationError(at_line(line) + "'groups' must be an array");
      for (const auto& label : value) {
        if (!label.is_string()) throw ValidationError(at_line(line) + "group labels must be strings");
        add_group(record, label.get<std::string>());
      }
    } else {
      record.extra[key] = value;
    }
  }
  return record;
}

std::string extra_as_text(const json& value) {
  return value.is_string() ? value.get<std::string>() : value.dump();
}

}  // namespace

bool PaperRecord::has_group(const std::string& label) const {
  return std::find(groups.begin(), groups.end(), label) != groups.end();
}

Corpus::Corpus(std::vector<PaperRecord> records, YearWindow pub_window,
               std::string citation_window_note, std::map<std::string, JournalMeta> journals)
    : records_(std::move(records)),
      pub_window_(pub_window),
      citation_window_note_(std::move(citation_window_note)),
      journals_(std::move(journals)) {
  if (pub_window_.first > pub_window_.last) {
    throw ValidationError("publication window start " + std::to_string(pub_window_.first) +
                          " is after its end " + std::to_string(pub_window_.last));
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(records_.size());
  for (const auto& record : records_) {
    if (!seen.insert(record.id).second) throw ValidationError("duplicate id '" + record.id + "'");
    if (record.citations < 0) throw ValidationError("negative citations for id '" + record.id + "'");
    if (!pub_window_.contains(record.year)) {
      throw ValidationError("year " + std::to_string(record.year) + " of id '" + record.id +
                            "' outside publication window");
    }
  }
  for (const auto& [name, meta] : journals_) {
    if (meta.jif && *meta.jif < 0) throw ValidationError("negative JIF for journal '" + name + "'");
  }
}

std::vector<std::string> Corpus::ids() const {
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.id);
  return out;
}

std::vector<std::int64_t> Corpus::citations() const {
  std::vector<std::int64_t> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.citations);
  return out;
}

Format parse_format(const std::string& name) {
  if (name == "jsonl") return Format::jsonl;
  if (name == "csv") return Format::csv;
  throw ValidationError("unknown format '" + name + "' (expected jsonl or csv)");
}

Corpus read_corpus_jsonl(std::istream& in, const LoadOptions& options) {
  std::vector<PaperRecord> records;
  std::optional<YearWindow> declared;
  std::string note;
  std::map<std::string, JournalMeta> journals;
  RowChecker checker;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError(at_line(line_no) + "malformed JSON: " + e.what());
    }
    if (!row.is_object()) throw ValidationError(at_line(line_no) + "expected a JSON object");

    if (row.contains("meta")) {
      const auto& meta = row["meta"];
      if (meta.contains("pub_window")) {
        const auto& w = meta["pub_window"];
        if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer()) {
          throw ValidationError(at_line(line_no) + "pub_window must be [first, last]");
        }
        declared = YearWindow{w[0].get<int>(), w[1].get<int>()};
      }
      if (meta.contains("citation_window")) note = extra_as_text(meta["citation_window"]);
      continue;
    }
    if (row.contains("journal_meta")) {
      const auto& jm = row["journal_meta"];
      if (!jm.contains("name") || !jm["name"].is_string()) {
        throw ValidationError(at_line(line_no) + "journal_meta requires a string 'name'");
      }
      JournalMeta meta{jm["name"].get<std::string>(), std::nullopt};
      if (jm.contains("jif") && !jm["jif"].is_null()) {
        if (!jm["jif"].is_number()) throw ValidationError(at_line(line_no) + "jif must be a number");
        meta.jif = jm["jif"].get<double>();
        if (*meta.jif < 0) throw ValidationError(at_line(line_no) + "negative jif");
      }
      journals[meta.name] = meta;
      continue;
    }

    auto record = record_from_json(row, line_no);
    checker.check(record, line_no);
    records.push_back(std::move(record));
  }

  if (options.journal_sidecar) {
    std::ifstream side(*options.journal_sidecar);
    if (!side) throw IoError("cannot open journal sidecar " + options.journal_sidecar->string());
    for (auto& [name, meta] : read_journal_sidecar(side)) journals[name] = meta;
  }

  const auto window = resolve_window(records, declared, options);
  checker.check_years(records, window);
  return Corpus(std::move(records), window, std::move(note), std::move(journals));
}

Corpus read_corpus_csv(std::istream& in, const LoadOptions& options) {
  csv::Reader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) return Corpus({}, options.pub_window.value_or(YearWindow{}));

  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!column.emplace(header[i], i).second) {
      throw ValidationError(at_line(reader.line()) + "duplicate column '" + header[i] + "'");
    }
  }
  for (const char* key : {"id", "year", "citations"}) {
    if (!column.count(key)) throw ValidationError("CSV header lacks required column '" + std::string(key) + "'");
  }
  auto find = [&](const char* key) -> std::optional<std::size_t> {
    auto it = column.find(key);
    if (it == column.end()) return std::nullopt;
    return it->second;
  };
  const auto journal_col = find("journal");
  const auto groups_col = find("groups");
  const auto topic_col = find("topic");
  static const std::set<std::string> known = {"id", "year", "citations", "journal", "groups", "topic"};

  std::vector<PaperRecord> records;
  RowChecker checker;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    const auto line = reader.line();
    if (fields.size() != header.size()) {
      throw ValidationError(at_line(line) + "expected " + std::to_string(header.size()) +
                            " fields, found " + std::to_string(fields.size()));
    }
    PaperRecord record;
    record.id = fields[column["id"]];
    record.year = parse_int<int>(fields[column["year"]], line, "year");
    record.citations = parse_int<std::int64_t>(fields[column["citations"]], line, "citations");
    if (journal_col && !fields[*journal_col].empty()) record.journal = fields[*journal_col];
    if (topic_col && !fields[*topic_col].empty()) record.topic = fields[*topic_col];
    if (groups_col) {
      std::string_view rest = fields[*groups_col];
      while (!rest.empty()) {
        const auto bar = rest.find('|');
        add_group(record, std::string(rest.substr(0, bar)));
        if (bar == std::string_view::npos) break;
        rest.remove_prefix(bar + 1);
      }
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (!known.count(header[i])) record.extra[header[i]] = fields[i];
    }
    checker.check(record, line);
    records.push_back(std::move(record));
  }

  std::map<std::string, JournalMeta> journals;
  if (options.journal_sidecar) {
    std::ifstream side(*options.journal_sidecar);
    if (!side) throw IoError("cannot open journal sidecar " + options.journal_sidecar->string());
    journals = read_journal_sidecar(side);
  }
  const auto window = resolve_window(records, std::nullopt, options);
  checker.check_years(records, window);
  return Corpus(std::move(records), window, {}, std::move(journals));
}

std::map<std::string, JournalMeta> read_journal_sidecar(std::istream& in) {
  csv::Reader reader(in);
  std::vector<std::string> fields;
  std::map<std::string, JournalMeta> journals;
  if (!reader.next(fields)) return journals;
  if (fields.size() < 2 || fields[0] != "name" || fields[1] != "jif") {
    throw ValidationError("journal sidecar header must be 'name,jif'");
  }
  while (reader.next(fields)) {
    if (fields.size() != 2) throw ValidationError(at_line(reader.line()) + "expected 2 fields");
    JournalMeta meta{fields[0], std::nullopt};
    if (!fields[1].empty()) {
      meta.jif = parse_double(fields[1], reader.line(), "jif");
      if (*meta.jif < 0) throw ValidationError(at_line(reader.line()) + "negative jif");
    }
    journals[meta.name] = meta;
  }
  return journals;
}

Corpus load_corpus(const std::filesystem::path& path, Format format, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return format == Format::jsonl ? read_corpus_jsonl(in, options) : read_corpus_csv(in, options);
}

void write_corpus_jsonl(std::ostream& out, const Corpus& corpus) {
  json meta = {{"pub_window", {corpus.pub_window().first, corpus.pub_window().last}}};
  if (!corpus.citation_window_note().empty()) meta["citation_window"] = corpus.citation_window_note();
  out << json{{"meta", meta}}.dump() << '\n';
  for (const auto& [name, jm] : corpus.journals()) {
    json row = {{"name", name}};
    if (jm.jif) row["jif"] = *jm.jif;
    out << json{{"journal_meta", row}}.dump() << '\n';
  }
  for (const auto& r : corpus.records()) {
    // ordered_json keeps the documented key order in the output.
    nlohmann::ordered_json row;
    row["id"] = r.id;
    row["year"] = r.year;
    row["citations"] = r.citations;
    if (r.journal) row["journal"] = *r.journal;
    row["groups"] = r.groups;
    if (r.topic) row["topic"] = *r.topic;
    for (const auto& [key, value] : r.extra.items()) row[key] = value;
    out << row.dump() << '\n';
  }
}

void write_corpus_csv(std::ostream& out, const Corpus& corpus) {
  std::set<std::string> extra_keys;
  for (const auto& r : corpus.records()) {
    for (const auto& [key, value] : r.extra.items()) extra_keys.insert(key);
  }
  std::vector<std::string> header = {"id", "year", "citations", "journal", "groups", "topic"};
  header.insert(header.end(), extra_keys.begin(), extra_keys.end());
  out << csv::join(header) << '\n';
  for (const auto& r : corpus.records()) {
    std::string groups;
    for (std::size_t i = 0; i < r.groups.size(); ++i) groups += (i ? "|" : "") + r.groups[i];
    std::vector<std::string> row = {r.id, std::to_string(r.year), std::to_string(r.citations),
                                    r.journal.value_or(""), groups, r.topic.value_or("")};
    for (const auto& key : extra_keys) {
      row.push_back(r.extra.contains(key) ? extra_as_text(r.extra[key]) : std::string{});
    }
    out << csv::join(row) << '\n';
  }
}

void save_corpus(const std::filesystem::path& path, Format format, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  if (format == Format::jsonl) {
    write_corpus_jsonl(out, corpus);
  } else {
    write_corpus_csv(out, corpus);
  }
  if (!out) throw IoError("write failed for " + path.string());
}

bool SelectionFilter::matches(const PaperRecord& record) const {
  for (const auto& label : groups) {
    if (!record.has_group(label)) return false;
  }
  if (journal && record.journal != journal) return false;
  if (topic && record.topic != topic) return false;
  if (years && !years->contains(record.year)) return false;
  if (single_group_only && record.groups.size() != 1) return false;
  return true;
}

bool SelectionFilter::is_empty() const {
  return groups.empty() && !journal && !topic && !years && !single_group_only;
}

Selection select(const Corpus& corpus, const SelectionFilter& filter) {
  std::vector<PaperRecord> kept;
  for (const auto& record : corpus.records()) {
    if (filter.matches(record)) kept.push_back(record);
  }

  std::vector<std::string> unmatched;
  for (const auto& label : filter.groups) {
    const bool any = std::any_of(corpus.records().begin(), corpus.records().end(),
                                 [&](const auto& r) { return r.has_group(label); });
    if (!any) unmatched.push_back("groups=" + label);
  }
  if (filter.journal) {
    const bool any = std::any_of(corpus.records().begin(), corpus.records().end(),
                                 [&](const auto& r) { return r.journal == filter.journal; });
    if (!any) unmatched.push_back("journal=" + *filter.journal);
  }
  if (filter.topic) {
    const bool any = std::any_of(corpus.records().begin(), corpus.records().end(),
                                 [&](const auto& r) { return r.topic == filter.topic; });
    if (!any) unmatched.push_back("topic=" + *filter.topic);
  }

  return {Corpus(std::move(kept), corpus.pub_window(), corpus.citation_window_note(), corpus.journals()),
          std::move(unmatched)};
}

void apply_filter_term(SelectionFilter& filter, const std::string& term) {
  const auto eq = term.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == term.size()) {
    throw ValidationError("filter must look like key=value: '" + term + "'");
  }
  const auto key = term.substr(0, eq);
  const auto value = term.substr(eq + 1);
  if (key == "groups" || key == "group") {
    filter.groups.push_back(value);
  } else if (key == "journal") {
    filter.journal = value;
  } else if (key == "topic") {
    filter.topic = value;
  } else if (key == "year") {
    const auto dash = value.find('-', 1);
    const auto first = parse_int<int>(value.substr(0, dash), 0, "year");
    const auto last = dash == std::string::npos ? first : parse_int<int>(value.substr(dash + 1), 0, "year");
    if (first > last) throw ValidationError("year filter range is reversed: '" + value + "'");
    filter.years = YearWindow{first, last};
  } else {
    throw ValidationError("unknown filter key '" + key + "'");
  }
}

std::vector<std::string> group_labels(const Corpus& corpus) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& r : corpus.records()) {
    for (const auto& g : r.groups) {
      if (seen.insert(g).second) out.push_back(g);
    }
  }
  return out;
}

std::vector<std::string> journal_labels(const Corpus& corpus) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& r : corpus.records()) {
    if (r.journal && seen.insert(*r.journal).second) out.push_back(*r.journal);
  }
  return out;
}

}  // namespace citelaw
