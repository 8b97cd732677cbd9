#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "usvar/context.hpp"
#include "usvar/errors.hpp"
#include "usvar/implication.hpp"

namespace usvar {

namespace detail {

class Bitset {
 public:
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }

  bool subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  std::size_t size() const { return bits_; }

 private:
  std::size_t bits_;
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

// Order-independent stable hash over the incidence cells, on folded labels.
// Used to tag mined implication sets with their source dataset.
inline std::uint64_t context_fingerprint(const PairContext& ctx) {
  std::vector<std::string> cells;
  cells.reserve(ctx.incidence.size());
  for (const auto& [obj, attr] : ctx.incidence)
    cells.push_back(fold_case(ctx.objects[static_cast<std::size_t>(obj)]) + "|" +
                    ctx.attributes[static_cast<std::size_t>(attr)].key());
  std::sort(cells.begin(), cells.end());
  std::uint64_t h = kFnvBasis;
  for (const auto& cell : cells) {
    h = fnv1a64(cell, h);
    h = fnv1a64("\n", h);
  }
  return h;
}

// Mines every implication between (role; feature) pairs that holds in the
// context: a universal implication per attribute held by all objects, and
// p => c for every ordered pair of distinct attributes where each object
// holding p also holds c and p is held by at least min_support objects.
// Support is the premise's object count (all objects for universals).
inline ImplicationSet mine_implications(const PairContext& ctx, int min_support = 1) {
  if (min_support < 1)
    throw ArgumentError("min_support must be >= 1, got " + std::to_string(min_support));

  const std::size_t n_obj = ctx.objects.size();
  const std::size_t n_attr = ctx.attributes.size();

  std::vector<std::string> keys(n_attr);
  std::unordered_map<std::string, std::size_t> key_index;
  for (std::size_t a = 0; a < n_attr; ++a) {
    keys[a] = ctx.attributes[a].key();
    if (!key_index.emplace(keys[a], a).second)
      throw ArgumentError("duplicate attribute in context: " + ctx.attributes[a].text());
  }

  std::vector<detail::Bitset> extent(n_attr, detail::Bitset(n_obj));
  for (const auto& [obj, attr] : ctx.incidence)
    extent[static_cast<std::size_t>(attr)].set(static_cast<std::size_t>(obj));
  std::vector<std::size_t> supp(n_attr);
  for (std::size_t a = 0; a < n_attr; ++a) supp[a] = extent[a].count();

  std::vector<Implication> out;
  for (std::size_t a = 0; a < n_attr; ++a)
    if (n_obj > 0 && supp[a] == n_obj)
      out.push_back({static_cast<int>(n_obj), std::nullopt, ctx.attributes[a]});

  for (std::size_t p = 0; p < n_attr; ++p) {
    if (supp[p] < static_cast<std::size_t>(min_support)) continue;
    for (std::size_t c = 0; c < n_attr; ++c) {
      if (c == p) continue;
      if (extent[p].subset_of(extent[c]))
        out.push_back({static_cast<int>(supp[p]), ctx.attributes[p], ctx.attributes[c]});
    }
  }
  return ImplicationSet::from(std::move(out), context_fingerprint(ctx));
}

// True when the implication holds in the context and its stated support equals
// the recomputed one.
inline bool verify_implication(const PairContext& ctx, const Implication& imp) {
  if (imp.premise && *imp.premise == imp.conclusion)
    throw ArgumentError("reflexive implication: " + imp.text());

  std::unordered_map<std::string, std::size_t> key_index;
  for (std::size_t a = 0; a < ctx.attributes.size(); ++a)
    key_index.emplace(ctx.attributes[a].key(), a);
  auto lookup = [&](const UserStory& story) {
    auto it = key_index.find(story.key());
    if (it == key_index.end())
      throw ArgumentError("unknown attribute: " + story.text());
    return it->second;
  };

  const std::size_t n_obj = ctx.objects.size();
  std::vector<detail::Bitset> extent(ctx.attributes.size(), detail::Bitset(n_obj));
  for (const auto& [obj, attr] : ctx.incidence)
    extent[static_cast<std::size_t>(attr)].set(static_cast<std::size_t>(obj));

  std::size_t conclusion_idx = lookup(imp.conclusion);
  bool holds;
  std::size_t support;
  if (imp.premise) {
    std::size_t premise_idx = lookup(*imp.premise);
    holds = extent[premise_idx].subset_of(extent[conclusion_idx]);
    support = extent[premise_idx].count();
  } else {
    holds = extent[conclusion_idx].count() == n_obj;
    support = n_obj;
  }
  return holds && imp.support == static_cast<int>(support);
}

}  // namespace usvar
