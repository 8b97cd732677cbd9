#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "usvar/errors.hpp"
#include "usvar/user_story.hpp"

namespace usvar {

// One implication line. An absent premise is a universal implication: the
// conclusion holds in every object. support counts the objects holding the
// premise; 0 means unknown (lists parsed from LLM answers).
struct Implication {
  int support = 0;
  std::optional<UserStory> premise;
  UserStory conclusion;

  // Identity ignores support; used for diffing and duplicate detection.
  std::string key() const {
    return (premise ? premise->key() : std::string()) + "=>" + conclusion.key();
  }

  // Formatted line: "<n> (r1;f1) => (r2;f2)" or "<n>  => (r;f)" for universal
  // implications. Unknown support omits the "<n> " marker.
  std::string text() const {
    std::string s;
    if (support > 0) s = "<" + std::to_string(support) + "> ";
    if (premise)
      s += premise->text() + " ";
    else if (support > 0)
      s += " ";
    s += "=> " + conclusion.text();
    return s;
  }

  friend bool operator==(const Implication& a, const Implication& b) {
    return a.support == b.support && a.key() == b.key();
  }
};

// Canonical file order: support descending, premise (universal first), conclusion.
struct ImplicationLess {
  bool operator()(const Implication& a, const Implication& b) const {
    if (a.support != b.support) return a.support > b.support;
    const bool a_universal = !a.premise, b_universal = !b.premise;
    if (a_universal != b_universal) return a_universal;
    if (!a_universal) {
      auto ak = a.premise->key(), bk = b.premise->key();
      if (ak != bk) return ak < bk;
    }
    return a.conclusion.key() < b.conclusion.key();
  }
};

// A canonically ordered, duplicate-free implication list, optionally tagged
// with the fingerprint of the context it was mined from.
class ImplicationSet {
 public:
  ImplicationSet() = default;

  static ImplicationSet from(std::vector<Implication> imps, std::uint64_t fingerprint = 0) {
    std::set<std::string> seen;
    for (const auto& imp : imps) {
      if (imp.support < 1) throw ArgumentError("implication support must be >= 1: " + imp.text());
      if (imp.premise && *imp.premise == imp.conclusion)
        throw ArgumentError("implication premise equals conclusion: " + imp.text());
      if (!seen.insert(imp.key()).second)
        throw ArgumentError("duplicate implication: " + imp.text());
    }
    std::sort(imps.begin(), imps.end(), ImplicationLess{});
    ImplicationSet out;
    out.imps_ = std::move(imps);
    out.fingerprint_ = fingerprint;
    return out;
  }

  const std::vector<Implication>& items() const { return imps_; }
  std::size_t size() const { return imps_.size(); }
  bool empty() const { return imps_.empty(); }
  auto begin() const { return imps_.begin(); }
  auto end() const { return imps_.end(); }
  std::uint64_t fingerprint() const { return fingerprint_; }

  // Every (role; feature) pair mentioned by a premise or conclusion.
  StorySet vocabulary() const {
    StorySet out;
    for (const auto& imp : imps_) {
      if (imp.premise) out.insert(*imp.premise);
      out.insert(imp.conclusion);
    }
    return out;
  }

  bool contains(const Implication& imp) const {
    auto k = imp.key();
    return std::any_of(imps_.begin(), imps_.end(),
                       [&](const Implication& x) { return x.key() == k; });
  }

  // Element-wise comparison; the fingerprint is metadata and not compared.
  friend bool operator==(const ImplicationSet& a, const ImplicationSet& b) {
    return a.imps_ == b.imps_;
  }

 private:
  std::vector<Implication> imps_;
  std::uint64_t fingerprint_ = 0;
};

}  // namespace usvar
