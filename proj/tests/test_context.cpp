#include "usvar/context.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "support/fixtures.hpp"

using namespace usvar;
using usvar::testing::kToyCsv;
using usvar::testing::kToyCsvFullNames;

TEST(ParseTriplesCsv, ToyFamily) {
  auto ctx = parse_triples_csv(kToyCsv);
  EXPECT_EQ(ctx.systems.size(), 3u);
  EXPECT_EQ(ctx.roles.size(), 3u);
  EXPECT_EQ(ctx.features.size(), 3u);
  EXPECT_EQ(ctx.triples.size(), 11u);
  EXPECT_EQ(ctx.systems.name(0), "MyManga");
  EXPECT_EQ(ctx.roles.name(1), "Administrator");
}

TEST(ParseTriplesCsv, HeaderOnly) {
  auto ctx = parse_triples_csv("system,role,actingVerb\n");
  EXPECT_EQ(ctx.systems.size(), 0u);
  EXPECT_EQ(ctx.triples.size(), 0u);
}

TEST(ParseTriplesCsv, DuplicateRecordsCollapse) {
  auto ctx = parse_triples_csv("s,r,f\na,b,c\na,b,c\n");
  EXPECT_EQ(ctx.triples.size(), 1u);
}

TEST(ParseTriplesCsv, CaseInsensitiveFirstSeenSpelling) {
  auto ctx = parse_triples_csv("s,r,f\nMyManga,FinalUser,search\nMYMANGA,finaluser,SEARCH\n");
  EXPECT_EQ(ctx.systems.size(), 1u);
  EXPECT_EQ(ctx.triples.size(), 1u);
  EXPECT_EQ(ctx.systems.name(0), "MyManga");
  EXPECT_EQ(ctx.features.name(0), "search");
}

TEST(ParseTriplesCsv, TrimsFieldsAndAcceptsCrlf) {
  auto ctx = parse_triples_csv("s,r,f\r\n a , b , c \r\n\r\nd,e,g\r\n");
  EXPECT_EQ(ctx.triples.size(), 2u);
  EXPECT_EQ(ctx.systems.name(0), "a");
}

TEST(ParseTriplesCsv, MalformedLineReportsLineNumber) {
  try {
    parse_triples_csv("s,r,f\na,b,c\na,b\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3u);
  }
  EXPECT_THROW(parse_triples_csv("s,r,f\na,b,c,d\n"), ParseError);
}

TEST(ParseTriplesCsv, EmptyFieldReportsLineNumber) {
  try {
    parse_triples_csv("s,r,f\na,,c\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
  }
}

TEST(ParseTriplesCsv, QuotedFieldRejected) {
  try {
    parse_triples_csv("s,r,f\n\"a\",b,c\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("quoted"), std::string::npos);
  }
}

TEST(ParseTriplesCsv, MissingHeader) {
  EXPECT_THROW(parse_triples_csv(""), ParseError);
  EXPECT_THROW(parse_triples_csv("  \n\n"), ParseError);
}

TEST(FlattenPairs, ToyFamilyCells) {
  auto dyadic = flatten_pairs(parse_triples_csv(kToyCsv));
  ASSERT_EQ(dyadic.objects.size(), 3u);
  EXPECT_EQ(dyadic.attributes.size(), 7u);
  EXPECT_EQ(dyadic.incidence.size(), 11u);

  auto held_by = [&](const std::string& system) {
    StorySet held;
    for (std::size_t o = 0; o < dyadic.objects.size(); ++o) {
      if (dyadic.objects[o] != system) continue;
      for (const auto& [obj, attr] : dyadic.incidence)
        if (obj == static_cast<int>(o)) held.insert(dyadic.attributes[attr]);
    }
    return held;
  };
  StorySet manga_home = held_by("MangaHome");
  EXPECT_EQ(manga_home.size(), 5u);
  EXPECT_TRUE(contains(manga_home, {"FinalUser", "s"}));
  EXPECT_TRUE(contains(manga_home, {"FinalUser", "vc"}));
  EXPECT_TRUE(contains(manga_home, {"Administrator", "vc"}));
  EXPECT_TRUE(contains(manga_home, {"ProductManager", "vc"}));
  EXPECT_TRUE(contains(manga_home, {"ProductManager", "mc"}));
}

TEST(FlattenPairs, EmptyContext) {
  auto dyadic = flatten_pairs(parse_triples_csv("s,r,f\n"));
  EXPECT_TRUE(dyadic.objects.empty());
  EXPECT_TRUE(dyadic.attributes.empty());
  EXPECT_TRUE(dyadic.incidence.empty());
}

TEST(FlattenPairs, SingleTriple) {
  auto dyadic = flatten_pairs(parse_triples_csv("s,r,f\no,a,b\n"));
  EXPECT_EQ(dyadic.objects.size(), 1u);
  EXPECT_EQ(dyadic.attributes.size(), 1u);
  EXPECT_EQ(dyadic.incidence.size(), 1u);
}

TEST(FlattenFeatures, ToyFamily) {
  auto dyadic = flatten_features(parse_triples_csv(kToyCsvFullNames));
  auto features_of = [&](const std::string& system) {
    std::set<std::string> held;
    for (std::size_t o = 0; o < dyadic.objects.size(); ++o) {
      if (dyadic.objects[o] != system) continue;
      for (const auto& [obj, attr] : dyadic.incidence)
        if (obj == static_cast<int>(o)) held.insert(dyadic.attributes[attr]);
    }
    return held;
  };
  EXPECT_EQ(features_of("MyManga"), (std::set<std::string>{"search", "manageCart"}));
  EXPECT_EQ(features_of("MangaStore"), (std::set<std::string>{"search"}));
  EXPECT_EQ(features_of("MangaHome"),
            (std::set<std::string>{"search", "viewComment", "manageCart"}));
}

TEST(FlattenFeatures, FullIncidence) {
  auto dyadic = flatten_features(parse_triples_csv("s,r,f\na,r1,x\na,r2,y\nb,r1,y\nb,r1,x\n"));
  EXPECT_EQ(dyadic.incidence.size(), dyadic.objects.size() * dyadic.attributes.size());
}

TEST(UserStories, ToyFamilyDistinctPairs) {
  auto stories = user_stories(parse_triples_csv(kToyCsv));
  EXPECT_EQ(stories.size(), 7u);
  EXPECT_TRUE(contains(stories, {"ProductManager", "mc"}));
}

TEST(UserStories, Empty) {
  EXPECT_TRUE(user_stories(parse_triples_csv("s,r,f\n")).empty());
}

TEST(Stats, ToyFamily) {
  EXPECT_EQ(stats(parse_triples_csv(kToyCsv)), (ContextStats{3, 3, 3, 11, 7}));
}

TEST(Stats, Empty) {
  EXPECT_EQ(stats(parse_triples_csv("s,r,f\n")), (ContextStats{0, 0, 0, 0, 0}));
}

namespace {

std::string random_csv(std::mt19937_64& rng, std::vector<std::string>* lines_out = nullptr) {
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> count(1, 40);
  std::vector<std::string> lines;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    lines.push_back("sys" + std::to_string(dim(rng)) + ",role" + std::to_string(dim(rng)) +
                    ",feat" + std::to_string(dim(rng)));
  }
  if (lines_out) *lines_out = lines;
  std::string csv = "system,role,feature\n";
  for (const auto& l : lines) csv += l + "\n";
  return csv;
}

}  // namespace

TEST(ContextProperties, TriplesAndPairCellsAreInBijection) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    auto ctx = parse_triples_csv(random_csv(rng));
    auto dyadic = flatten_pairs(ctx);
    ASSERT_EQ(dyadic.incidence.size(), ctx.triples.size());
    std::set<std::string> from_triples, from_cells;
    for (const auto& t : ctx.triples)
      from_triples.insert(fold_case(ctx.systems.name(t.system)) + "|" +
                          fold_case(ctx.roles.name(t.role)) + ";" +
                          fold_case(ctx.features.name(t.feature)));
    for (const auto& [obj, attr] : dyadic.incidence)
      from_cells.insert(fold_case(dyadic.objects[obj]) + "|" + dyadic.attributes[attr].key());
    EXPECT_EQ(from_triples, from_cells);
  }
}

TEST(ContextProperties, FeatureIncidenceIsRoleProjection) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    auto ctx = parse_triples_csv(random_csv(rng));
    auto pairs = flatten_pairs(ctx);
    auto feats = flatten_features(ctx);
    std::set<std::pair<std::string, std::string>> projected, direct;
    for (const auto& [obj, attr] : pairs.incidence)
      projected.insert({fold_case(pairs.objects[obj]), fold_case(pairs.attributes[attr].feature)});
    for (const auto& [obj, attr] : feats.incidence)
      direct.insert({fold_case(feats.objects[obj]), fold_case(feats.attributes[attr])});
    EXPECT_EQ(projected, direct);
  }
}

TEST(ContextProperties, ParseIsInvariantUnderReorderAndDuplication) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 30; ++iter) {
    std::vector<std::string> lines;
    auto csv = random_csv(rng, &lines);
    auto baseline = parse_triples_csv(csv);

    std::shuffle(lines.begin(), lines.end(), rng);
    std::vector<std::string> noisy = lines;
    std::uniform_int_distribution<std::size_t> pick(0, lines.size() - 1);
    noisy.push_back(lines[pick(rng)]);
    std::string shuffled = "system,role,feature\n";
    for (const auto& l : noisy) shuffled += l + "\n";

    EXPECT_TRUE(parse_triples_csv(shuffled) == baseline);
  }
}

TEST(ContextProperties, StatsUserStoriesMatchesEnumeration) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 30; ++iter) {
    auto ctx = parse_triples_csv(random_csv(rng));
    auto s = stats(ctx);
    EXPECT_EQ(s.n_user_stories, user_stories(ctx).size());
    EXPECT_LE(s.n_user_stories, s.n_roles * s.n_features);
    EXPECT_LE(s.n_triples, s.n_systems * s.n_roles * s.n_features);
  }
}
