#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "usvar/errors.hpp"
#include "usvar/implication.hpp"
#include "usvar/strings.hpp"
#include "usvar/user_story.hpp"

namespace usvar {

// An LLM-proposed high-level grouping of roles and features offered to the
// designer, e.g. "Payment & Subscription Management".
struct DesignOption {
  std::string name;
  std::vector<std::string> roles;
  std::vector<std::string> features;
  StorySet stories;  // roles x features, filtered to the known story set when given
};

struct ParsedOptions {
  std::vector<DesignOption> options;
  std::vector<std::string> warnings;
};

namespace detail {

// Drops list decoration: bullets, "1." / "1)" numbering, markdown emphasis,
// heading hashes.
inline std::string_view strip_decoration(std::string_view line) {
  auto s = trim(line);
  while (true) {
    auto before = s;
    while (!s.empty() && (s.front() == '-' || s.front() == '*' || s.front() == '#')) {
      s.remove_prefix(1);
      s = trim(s);
    }
    std::size_t digits = 0;
    while (digits < s.size() && s[digits] >= '0' && s[digits] <= '9') ++digits;
    if (digits > 0 && digits < s.size() && (s[digits] == '.' || s[digits] == ')')) {
      s.remove_prefix(digits + 1);
      s = trim(s);
    }
    if (s == before) break;
  }
  while (s.size() >= 4 && s.substr(0, 2) == "**" && s.substr(s.size() - 2) == "**")
    s = trim(s.substr(2, s.size() - 4));
  return s;
}

inline bool is_noise_line(std::string_view s) {
  if (s.empty()) return true;
  for (char c : s)
    if (c != '(' && c != ')' && c != '.' && c != '-' && c != '=' && c != '_' && c != '~')
      return false;
  return true;  // separators and "(...)" ellipses
}

// "Roles: a, b" / "Features: x, y" detection; returns the list part.
inline std::optional<std::string_view> labeled_list(std::string_view s, std::string_view label) {
  auto folded = fold_case(s);
  auto want = fold_case(label);
  if (folded.rfind(want, 0) != 0) return std::nullopt;
  auto rest = s.substr(want.size());
  rest = trim(rest);
  if (rest.empty() || rest.front() != ':') return std::nullopt;
  return trim(rest.substr(1));
}

inline std::vector<std::string> comma_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto item : split(text, ',')) {
    auto cleaned = strip_decoration(item);
    if (!cleaned.empty()) out.emplace_back(cleaned);
  }
  return out;
}

}  // namespace detail

// Extracts option blocks by heading: a heading line followed by "Roles:" and
// "Features:" comma lists. stories is the cross product, restricted to
// `known` when provided (dropped combinations are reported as warnings).
inline ParsedOptions parse_design_options(std::string_view answer,
                                          const StorySet* known = nullptr) {
  ParsedOptions result;
  std::optional<DesignOption> current;
  std::string last_heading;

  auto finalize = [&] {
    if (current && (!current->roles.empty() || !current->features.empty())) {
      for (const auto& role : current->roles) {
        for (const auto& feature : current->features) {
          UserStory story{role, feature};
          if (known && !contains(*known, story)) {
            result.warnings.push_back("option '" + current->name + "': dropping pair " +
                                      story.text() + " not present in the user-story data");
            continue;
          }
          current->stories.insert(story);
        }
      }
      result.options.push_back(std::move(*current));
    }
    current.reset();
  };

  for (auto raw : split_lines(answer)) {
    auto line = detail::strip_decoration(raw);
    if (detail::is_noise_line(line)) continue;

    if (auto roles = detail::labeled_list(line, "Roles")) {
      if (current && !current->roles.empty()) finalize();
      if (!current) {
        if (last_heading.empty()) continue;
        current = DesignOption{last_heading, {}, {}, {}};
      }
      current->roles = detail::comma_list(*roles);
      continue;
    }
    if (auto features = detail::labeled_list(line, "Features")) {
      if (current && !current->features.empty()) finalize();
      if (!current) {
        if (last_heading.empty()) continue;
        current = DesignOption{last_heading, {}, {}, {}};
      }
      current->features = detail::comma_list(*features);
      continue;
    }

    // anything else is a candidate heading for the next block
    finalize();
    std::string heading(line);
    while (!heading.empty() && heading.back() == ':') heading.pop_back();
    heading = std::string(trim(heading));
    if (!heading.empty()) last_heading = heading;
  }
  finalize();

  if (result.options.empty())
    throw ParseError("no design options found in the step 1 answer");
  return result;
}

// Extracts every "(token;token)" occurrence, tolerating bullets, numbering and
// mixed case; duplicates collapse under the case-insensitive identity.
inline StorySet parse_pairs(std::string_view answer) {
  StorySet out;
  std::size_t pos = 0;
  while ((pos = answer.find('(', pos)) != std::string::npos) {
    auto close = answer.find(')', pos + 1);
    if (close == std::string::npos) break;
    auto inner = answer.substr(pos + 1, close - pos - 1);
    if (inner.find('(') != std::string_view::npos ||
        inner.find('\n') != std::string_view::npos) {
      ++pos;
      continue;
    }
    auto parts = split(inner, ';');
    if (parts.size() == 2) {
      auto role = trim(parts[0]);
      auto feature = trim(parts[1]);
      if (!role.empty() && !feature.empty())
        out.insert({std::string(role), std::string(feature)});
    }
    pos = close + 1;
  }
  if (out.empty()) throw ParseError("no (role;feature) pairs found in the answer");
  return out;
}

namespace detail {

// Tolerant implication line: optional "<n>", optional premise pair, "=>",
// conclusion pair; trailing prose ignored. nullopt when the line is not an
// implication.
inline std::optional<Implication> try_parse_loose_implication(std::string_view raw) {
  auto line = strip_decoration(raw);
  if (line.find("=>") == std::string_view::npos) return std::nullopt;

  Implication imp;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < line.size() && is_space(line[pos])) ++pos;
  };
  skip_ws();
  if (pos < line.size() && line[pos] == '<') {
    auto close = line.find('>', pos);
    if (close == std::string_view::npos) return std::nullopt;
    int value = 0;
    bool numeric = close > pos + 1;
    for (std::size_t i = pos + 1; i < close && numeric; ++i) {
      numeric = line[i] >= '0' && line[i] <= '9';
      if (numeric) value = value * 10 + (line[i] - '0');
    }
    if (!numeric) return std::nullopt;
    imp.support = value;
    pos = close + 1;
    skip_ws();
  }

  auto parse_pair_at = [&](std::size_t& cursor) -> std::optional<UserStory> {
    if (cursor >= line.size() || line[cursor] != '(') return std::nullopt;
    auto close = line.find(')', cursor);
    auto sep = line.find(';', cursor);
    if (close == std::string_view::npos || sep == std::string_view::npos || sep > close)
      return std::nullopt;
    auto role = trim(line.substr(cursor + 1, sep - cursor - 1));
    auto feature = trim(line.substr(sep + 1, close - sep - 1));
    if (role.empty() || feature.empty()) return std::nullopt;
    cursor = close + 1;
    return UserStory{std::string(role), std::string(feature)};
  };

  if (pos < line.size() && line[pos] == '(') {
    imp.premise = parse_pair_at(pos);
    if (!imp.premise) return std::nullopt;
    skip_ws();
  }
  if (line.substr(pos, 2) != "=>") return std::nullopt;
  pos += 2;
  skip_ws();
  auto conclusion = parse_pair_at(pos);
  if (!conclusion) return std::nullopt;
  imp.conclusion = *conclusion;
  if (imp.premise && *imp.premise == imp.conclusion) return std::nullopt;
  return imp;
}

}  // namespace detail

// Extracts "(r1;f1) => (r2;f2)" lines with or without a "<n>" support marker;
// an absent marker leaves support 0 (unknown).
inline std::vector<Implication> parse_applied_implications(std::string_view answer) {
  std::vector<Implication> out;
  for (auto line : split_lines(answer))
    if (auto imp = detail::try_parse_loose_implication(line)) out.push_back(std::move(*imp));
  if (out.empty()) throw ParseError("no applied implications found in the answer");
  return out;
}

struct Step3Answer {
  std::vector<Implication> applied;
  StorySet stories;
};

namespace detail {

inline std::optional<std::size_t> find_marker(const std::vector<std::string_view>& lines,
                                              std::string_view word) {
  for (std::size_t i = lines.size(); i > 0; --i) {
    auto folded = fold_case(lines[i - 1]);
    if (folded.find("result") != std::string::npos &&
        folded.find(word) != std::string::npos)
      return i - 1;
  }
  return std::nullopt;
}

inline std::string join_lines(const std::vector<std::string_view>& lines, std::size_t begin,
                              std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    out += lines[i];
    out += '\n';
  }
  return out;
}

}  // namespace detail

// Splits a step 3 answer at its "Result 2" marker: applied implications
// before it, the story list after it. Without markers, implication lines and
// plain pair lines are separated by the "=>" arrow.
inline Step3Answer parse_step3_answer(std::string_view answer) {
  auto lines = split_lines(answer);
  Step3Answer out;
  if (auto marker = detail::find_marker(lines, "2")) {
    out.applied = parse_applied_implications(detail::join_lines(lines, 0, *marker));
    out.stories = parse_pairs(detail::join_lines(lines, *marker + 1, lines.size()));
    return out;
  }
  std::string implication_lines, pair_lines;
  for (auto line : lines) {
    if (line.find("=>") != std::string_view::npos)
      implication_lines += std::string(line) + "\n";
    else
      pair_lines += std::string(line) + "\n";
  }
  out.applied = parse_applied_implications(implication_lines);
  out.stories = parse_pairs(pair_lines);
  return out;
}

// Step 4 answers may discuss additions and removals before the final list;
// only pairs after the last "Result ... 4" marker count when one is present.
inline StorySet parse_final_pairs(std::string_view answer) {
  auto lines = split_lines(answer);
  if (auto marker = detail::find_marker(lines, "4"))
    return parse_pairs(detail::join_lines(lines, *marker + 1, lines.size()));
  return parse_pairs(answer);
}

}  // namespace usvar
