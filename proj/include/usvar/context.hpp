#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "usvar/errors.hpp"
#include "usvar/strings.hpp"
#include "usvar/user_story.hpp"

namespace usvar {

// Interns names case-insensitively, keeping the first-seen spelling for display.
// Ids follow first-occurrence order.
class NameTable {
 public:
  int intern(std::string_view name) {
    std::string folded = fold_case(name);
    auto it = index_.find(folded);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(display_.size());
    display_.emplace_back(name);
    index_.emplace(std::move(folded), id);
    return id;
  }

  std::optional<int> find(std::string_view name) const {
    auto it = index_.find(fold_case(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(int id) const { return display_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return display_.size(); }
  const std::vector<std::string>& names() const { return display_; }

 private:
  std::vector<std::string> display_;
  std::unordered_map<std::string, int> index_;
};

struct Triple {
  int system;
  int role;
  int feature;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct ContextStats {
  std::size_t n_systems = 0;
  std::size_t n_roles = 0;
  std::size_t n_features = 0;
  std::size_t n_triples = 0;
  std::size_t n_user_stories = 0;
  friend bool operator==(const ContextStats&, const ContextStats&) = default;
};

// The ternary relation systems x roles x features. Dimension names are listed
// in first-occurrence order; every listed name occurs in at least one triple
// when built through add()/parse_triples_csv.
struct TriadicContext {
  NameTable systems;
  NameTable roles;
  NameTable features;
  std::set<Triple> triples;

  void add(std::string_view system, std::string_view role, std::string_view feature) {
    triples.insert({systems.intern(system), roles.intern(role), features.intern(feature)});
  }
};

// Semantic equality: same name sets and same triples, ignoring order and case.
inline bool operator==(const TriadicContext& a, const TriadicContext& b) {
  auto folded_names = [](const NameTable& t) {
    std::set<std::string> out;
    for (const auto& n : t.names()) out.insert(fold_case(n));
    return out;
  };
  auto folded_triples = [](const TriadicContext& ctx) {
    std::set<std::array<std::string, 3>> out;
    for (const auto& t : ctx.triples)
      out.insert({fold_case(ctx.systems.name(t.system)), fold_case(ctx.roles.name(t.role)),
                  fold_case(ctx.features.name(t.feature))});
    return out;
  };
  return folded_names(a.systems) == folded_names(b.systems) &&
         folded_names(a.roles) == folded_names(b.roles) &&
         folded_names(a.features) == folded_names(b.features) &&
         folded_triples(a) == folded_triples(b);
}

// A binary objects x attributes relation. Attr is the attribute label type:
// UserStory for pair attributes, std::string for plain feature attributes.
template <class Attr>
struct DyadicContext {
  std::vector<std::string> objects;
  std::vector<Attr> attributes;
  std::set<std::pair<int, int>> incidence;  // (object, attribute) index pairs
};

using PairContext = DyadicContext<UserStory>;
using FeatureContext = DyadicContext<std::string>;

namespace detail {

inline void check_csv_field(std::string_view field, std::size_t line_no, std::size_t col) {
  if (field.empty())
    throw ParseError("empty field in column " + std::to_string(col), line_no);
  if (field.front() == '"' || field.back() == '"')
    throw ParseError("quoted fields are not supported", line_no);
}

inline std::array<std::string_view, 3> parse_csv_record(std::string_view line,
                                                        std::size_t line_no) {
  auto fields = split(line, ',');
  if (fields.size() != 3)
    throw ParseError("expected 3 comma-separated fields, got " + std::to_string(fields.size()),
                     line_no);
  std::array<std::string_view, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = trim(fields[i]);
    check_csv_field(out[i], line_no, i + 1);
  }
  return out;
}

}  // namespace detail

// Reads a header plus one (system, role, feature) record per line. Duplicate
// records collapse; names are deduplicated case-insensitively with the
// first-seen spelling kept.
inline TriadicContext parse_triples_csv(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw ParseError("missing header line");
  detail::parse_csv_record(lines[i], i + 1);  // header: three named columns
  TriadicContext ctx;
  for (++i; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto [system, role, feature] = detail::parse_csv_record(lines[i], i + 1);
    ctx.add(system, role, feature);
  }
  return ctx;
}

// Objects = systems, attributes = the (role; feature) pairs occurring in at
// least one triple, ordered by (role id, feature id).
inline PairContext flatten_pairs(const TriadicContext& ctx) {
  PairContext out;
  out.objects = ctx.systems.names();
  std::map<std::pair<int, int>, int> attr_ids;
  for (const auto& t : ctx.triples) attr_ids.emplace(std::make_pair(t.role, t.feature), 0);
  int next = 0;
  for (auto& [pair, id] : attr_ids) {
    id = next++;
    out.attributes.push_back({ctx.roles.name(pair.first), ctx.features.name(pair.second)});
  }
  for (const auto& t : ctx.triples)
    out.incidence.insert({t.system, attr_ids.at({t.role, t.feature})});
  return out;
}

// Objects = systems, attributes = features; a cell is set when any role gives
// the system that feature.
inline FeatureContext flatten_features(const TriadicContext& ctx) {
  FeatureContext out;
  out.objects = ctx.systems.names();
  out.attributes = ctx.features.names();
  for (const auto& t : ctx.triples) out.incidence.insert({t.system, t.feature});
  return out;
}

inline StorySet user_stories(const TriadicContext& ctx) {
  StorySet out;
  for (const auto& t : ctx.triples)
    out.insert({ctx.roles.name(t.role), ctx.features.name(t.feature)});
  return out;
}

inline ContextStats stats(const TriadicContext& ctx) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& t : ctx.triples) pairs.insert({t.role, t.feature});
  return {ctx.systems.size(), ctx.roles.size(), ctx.features.size(), ctx.triples.size(),
          pairs.size()};
}

}  // namespace usvar
