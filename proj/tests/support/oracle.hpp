#pragma once

// Test-only brute-force oracles, kept independent of the library's mining
// path: extents are plain sorted int sets and inclusion is std::includes.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "usvar/context.hpp"
#include "usvar/implication.hpp"

namespace usvar::testing {

inline std::vector<std::set<int>> oracle_extents(const PairContext& ctx) {
  std::vector<std::set<int>> extents(ctx.attributes.size());
  for (const auto& [obj, attr] : ctx.incidence) extents[attr].insert(obj);
  return extents;
}

// Tests every universal candidate and every ordered attribute pair directly
// against the definition.
inline std::vector<Implication> oracle_mine(const PairContext& ctx, int min_support) {
  auto extents = oracle_extents(ctx);
  const int n_obj = static_cast<int>(ctx.objects.size());
  const int n_attr = static_cast<int>(ctx.attributes.size());
  std::vector<Implication> out;
  for (int a = 0; a < n_attr; ++a)
    if (n_obj > 0 && static_cast<int>(extents[a].size()) == n_obj)
      out.push_back({n_obj, std::nullopt, ctx.attributes[a]});
  for (int p = 0; p < n_attr; ++p) {
    if (static_cast<int>(extents[p].size()) < min_support) continue;
    for (int c = 0; c < n_attr; ++c) {
      if (c == p) continue;
      if (std::includes(extents[c].begin(), extents[c].end(), extents[p].begin(),
                        extents[p].end()))
        out.push_back({static_cast<int>(extents[p].size()), ctx.attributes[p],
                       ctx.attributes[c]});
    }
  }
  std::sort(out.begin(), out.end(), ImplicationLess{});
  return out;
}

// Random dyadic context with 1..max_objects objects, 1..max_attributes
// distinct pair attributes and the given incidence density.
inline PairContext random_pair_context(std::mt19937_64& rng, int max_objects = 12,
                                       int max_attributes = 15) {
  std::uniform_int_distribution<int> obj_dist(1, max_objects);
  std::uniform_int_distribution<int> attr_dist(1, max_attributes);
  std::uniform_real_distribution<double> density_dist(0.1, 0.9);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  const int n_obj = obj_dist(rng);
  const int n_attr = attr_dist(rng);
  const double density = density_dist(rng);

  PairContext ctx;
  for (int o = 0; o < n_obj; ++o) ctx.objects.push_back("sys" + std::to_string(o));
  for (int a = 0; a < n_attr; ++a)
    ctx.attributes.push_back({"role" + std::to_string(a % 4), "feat" + std::to_string(a)});
  for (int o = 0; o < n_obj; ++o)
    for (int a = 0; a < n_attr; ++a)
      if (coin(rng) < density) ctx.incidence.insert({o, a});
  return ctx;
}

// Random seed drawn from the context's attributes.
inline StorySet random_seed(std::mt19937_64& rng, const PairContext& ctx) {
  StorySet seed;
  if (ctx.attributes.empty()) return seed;
  std::uniform_int_distribution<std::size_t> count_dist(0, ctx.attributes.size());
  std::uniform_int_distribution<std::size_t> pick(0, ctx.attributes.size() - 1);
  std::size_t n = count_dist(rng);
  for (std::size_t i = 0; i < n; ++i) seed.insert(ctx.attributes[pick(rng)]);
  return seed;
}

}  // namespace usvar::testing
