#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "usvar/errors.hpp"
#include "usvar/implication.hpp"

namespace usvar {

// One line per implication, set order, LF endings. Empty set formats to
// empty text.
inline std::string format_implications(const ImplicationSet& set) {
  std::string out;
  for (const auto& imp : set) {
    out += imp.text();
    out += '\n';
  }
  return out;
}

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  void skip_ws() {
    while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
  }

  bool at_end() const { return pos_ == line_.size(); }
  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

  void expect(std::string_view token) {
    if (line_.substr(pos_, token.size()) != token)
      throw ParseError("expected '" + std::string(token) + "'", line_no_);
    pos_ += token.size();
  }

  int parse_support() {
    expect("<");
    std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] >= '0' && line_[pos_] <= '9') ++pos_;
    if (pos_ == start) throw ParseError("expected support count after '<'", line_no_);
    int value = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      value = value * 10 + (line_[i] - '0');
      if (value > 1'000'000'000) throw ParseError("support out of range", line_no_);
    }
    expect(">");
    return value;
  }

  UserStory parse_pair() {
    expect("(");
    std::size_t sep = line_.find(';', pos_);
    std::size_t close = line_.find(')', pos_);
    if (sep == std::string_view::npos || close == std::string_view::npos || sep > close)
      throw ParseError("expected '(role;feature)' pair", line_no_);
    std::string_view role = trim(line_.substr(pos_, sep - pos_));
    std::string_view feature = trim(line_.substr(sep + 1, close - sep - 1));
    if (role.empty() || feature.empty() || role.find('(') != std::string_view::npos ||
        feature.find(';') != std::string_view::npos)
      throw ParseError("expected '(role;feature)' pair", line_no_);
    pos_ = close + 1;
    return {std::string(role), std::string(feature)};
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

inline Implication parse_implication_line(std::string_view line, std::size_t line_no) {
  LineCursor cur(line, line_no);
  cur.skip_ws();
  Implication imp;
  imp.support = cur.parse_support();
  if (imp.support < 1) throw ParseError("support must be >= 1", line_no);
  cur.skip_ws();
  if (cur.peek() == '(') {
    imp.premise = cur.parse_pair();
    cur.skip_ws();
  }
  cur.expect("=>");
  cur.skip_ws();
  imp.conclusion = cur.parse_pair();
  cur.skip_ws();
  if (!cur.at_end()) throw ParseError("unexpected trailing text", line_no);
  if (imp.premise && *imp.premise == imp.conclusion)
    throw ParseError("implication premise equals conclusion", line_no);
  return imp;
}

}  // namespace detail

// Inverse of format_implications. Blank lines and surrounding whitespace are
// tolerated; the result is re-sorted into canonical order.
inline ImplicationSet parse_implications(std::string_view text) {
  auto lines = split_lines(text);
  std::vector<Implication> imps;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    Implication imp = detail::parse_implication_line(lines[i], i + 1);
    if (!seen.insert(imp.key()).second)
      throw ParseError("duplicate implication: " + imp.text(), i + 1);
    imps.push_back(std::move(imp));
  }
  return ImplicationSet::from(std::move(imps));
}

}  // namespace usvar
