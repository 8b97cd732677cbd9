#pragma once

#include <string>

#include "usvar/context.hpp"

namespace usvar::testing {

// The three-website toy family, abbreviated feature names (search s,
// view comment vc, manage cart mc).
inline const char* kToyCsv =
    "system,role,actingVerb\n"
    "MyManga,FinalUser,s\n"
    "MyManga,Administrator,s\n"
    "MyManga,Administrator,mc\n"
    "MyManga,ProductManager,mc\n"
    "MangaStore,FinalUser,s\n"
    "MangaStore,Administrator,s\n"
    "MangaHome,FinalUser,s\n"
    "MangaHome,FinalUser,vc\n"
    "MangaHome,Administrator,vc\n"
    "MangaHome,ProductManager,vc\n"
    "MangaHome,ProductManager,mc\n";

// Same family with full feature names.
inline const char* kToyCsvFullNames =
    "system,role,actingVerb\n"
    "MyManga,FinalUser,search\n"
    "MyManga,Administrator,search\n"
    "MyManga,Administrator,manageCart\n"
    "MyManga,ProductManager,manageCart\n"
    "MangaStore,FinalUser,search\n"
    "MangaStore,Administrator,search\n"
    "MangaHome,FinalUser,search\n"
    "MangaHome,FinalUser,viewComment\n"
    "MangaHome,Administrator,viewComment\n"
    "MangaHome,ProductManager,viewComment\n"
    "MangaHome,ProductManager,manageCart\n";

// The system x (role; feature) relation of the toy family as printed in its
// flattened form (which drops MyManga's (ProductManager; mc) cell).
inline PairContext toy_pair_context_as_printed() {
  PairContext ctx;
  ctx.objects = {"MyManga", "MangaStore", "MangaHome"};
  ctx.attributes = {
      {"FinalUser", "s"},      {"FinalUser", "vc"},      {"FinalUser", "mc"},
      {"Administrator", "s"},  {"Administrator", "vc"},  {"Administrator", "mc"},
      {"ProductManager", "s"}, {"ProductManager", "vc"}, {"ProductManager", "mc"},
  };
  auto cell = [&](int obj, int attr) { ctx.incidence.insert({obj, attr}); };
  cell(0, 0);  // MyManga (FinalUser;s)
  cell(0, 3);  // MyManga (Administrator;s)
  cell(0, 5);  // MyManga (Administrator;mc)
  cell(1, 0);  // MangaStore (FinalUser;s)
  cell(1, 3);  // MangaStore (Administrator;s)
  cell(2, 0);  // MangaHome (FinalUser;s)
  cell(2, 1);  // MangaHome (FinalUser;vc)
  cell(2, 4);  // MangaHome (Administrator;vc)
  cell(2, 7);  // MangaHome (ProductManager;vc)
  cell(2, 8);  // MangaHome (ProductManager;mc)
  return ctx;
}

// The two-line implication excerpt of the four-website family.
inline const char* kExcerptImplications =
    "<4>  => (user;search)\n"
    "<2> (communityManager;moderateComment) => (user;viewComment)\n";

}  // namespace usvar::testing
