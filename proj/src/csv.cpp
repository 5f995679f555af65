#include "citelaw/csv.hpp"

#include <istream>

#include "citelaw/error.hpp"

namespace citelaw::csv {

bool Reader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    row_line_ = line_;

    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (true) {
      if (i == line.size()) {
        if (!quoted) break;
        // Quoted field spans a newline.
        std::string more;
        if (!std::getline(in_, more)) {
          throw ValidationError("line " + std::to_string(row_line_) + ": unterminated quoted field");
        }
        ++line_;
        if (!more.empty() && more.back() == '\r') more.pop_back();
        field += '\n';
        line = std::move(more);
        i = 0;
        continue;
      }
      const char ch = line[i];
      if (quoted) {
        if (ch == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          field += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else {
        field += ch;
      }
      ++i;
    }
    fields.push_back(std::move(field));
    return true;
  }
  return false;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace citelaw::csv
