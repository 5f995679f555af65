#pragma once

// Minimal RFC 4180 reader/writer: comma separator, double-quote quoting,
// quoted fields may contain commas, quotes ("") and newlines.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace citelaw::csv {

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads the next row into `fields`. Returns false at end of input.
  // Blank lines are skipped. Throws ValidationError on an unterminated quote.
  bool next(std::vector<std::string>& fields);

  // 1-based physical line on which the last returned row started.
  [[nodiscard]] std::size_t line() const { return row_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t row_line_ = 0;
};

[[nodiscard]] std::string escape(std::string_view field);
[[nodiscard]] std::string join(const std::vector<std::string>& fields);

}  // namespace citelaw::csv
