#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "usvar/implication.hpp"
#include "usvar/user_story.hpp"

namespace usvar {

struct ClosureResult {
  StorySet seed;
  StorySet derived;                     // seed plus conclusions of applied implications
  std::vector<Implication> applied;     // canonical order
  std::vector<UserStory> unknown_seed;  // seed pairs outside the implication vocabulary
};

namespace detail {

inline void note_unknown_seed(ClosureResult& result, const ImplicationSet& imps) {
  StorySet vocab = imps.vocabulary();
  for (const auto& story : result.seed)
    if (!contains(vocab, story)) result.unknown_seed.push_back(story);
}

}  // namespace detail

// One-pass application: every universal implication plus every premised
// implication whose premise is in the seed. An implication counts as applied
// even when its conclusion is already present. On a direct implication set
// this yields the full closure.
inline ClosureResult close(const StorySet& seed, const ImplicationSet& imps) {
  ClosureResult result;
  result.seed = seed;
  result.derived = seed;
  for (const auto& imp : imps) {
    if (!imp.premise || contains(seed, *imp.premise)) {
      result.applied.push_back(imp);
      result.derived.insert(imp.conclusion);
    }
  }
  detail::note_unknown_seed(result, imps);
  return result;
}

// Iterated application until no new story appears; the independent oracle for
// the directness property. applied lists every implication whose premise is
// satisfied by the final derived set, deduplicated, canonical order.
inline ClosureResult fixpoint_close(const StorySet& seed, const ImplicationSet& imps) {
  ClosureResult result;
  result.seed = seed;
  result.derived = seed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& imp : imps)
      if (!imp.premise || contains(result.derived, *imp.premise))
        changed |= result.derived.insert(imp.conclusion).second;
  }
  for (const auto& imp : imps)
    if (!imp.premise || contains(result.derived, *imp.premise)) result.applied.push_back(imp);
  detail::note_unknown_seed(result, imps);
  return result;
}

template <class T>
struct DiffReport {
  std::vector<T> left_only;
  std::vector<T> right_only;
  std::vector<T> both;

  std::size_t left_total() const { return left_only.size() + both.size(); }
  std::size_t right_total() const { return right_only.size() + both.size(); }
};

// Set difference on (premise, conclusion) identity; supports are ignored
// (LLM answers may omit them). Duplicates within a side collapse.
inline DiffReport<Implication> diff_implications(const std::vector<Implication>& left,
                                                 const std::vector<Implication>& right) {
  auto dedupe = [](const std::vector<Implication>& items) {
    std::map<std::string, Implication> out;
    for (const auto& imp : items) out.emplace(imp.key(), imp);
    return out;
  };
  auto l = dedupe(left), r = dedupe(right);
  DiffReport<Implication> report;
  for (const auto& [key, imp] : l)
    (r.count(key) ? report.both : report.left_only).push_back(imp);
  for (const auto& [key, imp] : r)
    if (!l.count(key)) report.right_only.push_back(imp);
  return report;
}

// Case-insensitive set difference.
inline DiffReport<UserStory> diff_stories(const StorySet& left, const StorySet& right) {
  DiffReport<UserStory> report;
  for (const auto& story : left)
    (contains(right, story) ? report.both : report.left_only).push_back(story);
  for (const auto& story : right)
    if (!contains(left, story)) report.right_only.push_back(story);
  return report;
}

}  // namespace usvar
