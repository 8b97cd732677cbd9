#pragma once

#include <set>
#include <string>

#include "usvar/strings.hpp"

namespace usvar {

// A (role; feature) pair, the unit of a backlog. Identity is case-insensitive
// on both components; the stored strings keep the spelling they were first
// seen with.
struct UserStory {
  std::string role;
  std::string feature;

  std::string key() const { return fold_case(role) + ";" + fold_case(feature); }
  std::string text() const { return "(" + role + ";" + feature + ")"; }

  friend bool operator==(const UserStory& a, const UserStory& b) {
    return a.key() == b.key();
  }
};

struct UserStoryLess {
  bool operator()(const UserStory& a, const UserStory& b) const {
    return a.key() < b.key();
  }
};

// Ordered story set with case-insensitive identity; insertion keeps the
// first-seen spelling.
using StorySet = std::set<UserStory, UserStoryLess>;

inline bool contains(const StorySet& set, const UserStory& story) {
  return set.find(story) != set.end();
}

// One "(role;feature)" per line, set order, trailing newline unless empty.
inline std::string format_pairs(const StorySet& set) {
  std::string out;
  for (const auto& story : set) {
    out += story.text();
    out += '\n';
  }
  return out;
}

}  // namespace usvar
