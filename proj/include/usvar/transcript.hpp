#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "usvar/answer_parse.hpp"
#include "usvar/errors.hpp"
#include "usvar/implication.hpp"
#include "usvar/user_story.hpp"

namespace usvar {

inline constexpr const char* kTranscriptSchema = "usvar.transcript/1";

struct Exchange {
  int step = 0;
  std::string prompt;
  std::string answer;
  std::string timestamp;  // ISO-8601 UTC; excluded from canonical comparison
};

// A recorded 4-step conversation: configuration (minus credentials), the raw
// exchanges, and the structured results parsed from each answer.
struct ConversationTranscript {
  std::string schema = kTranscriptSchema;
  std::string id;
  std::string date;  // calendar date, free-form
  std::string endpoint;
  std::string model;
  std::string credential_env;  // variable name only, never the credential value
  std::optional<double> temperature;
  std::vector<std::string> selected_options;
  std::string status = "ok";  // "ok" | "failed"
  std::string error;

  std::vector<Exchange> exchanges;
  std::optional<std::vector<DesignOption>> step1_options;
  std::optional<StorySet> step2_seed;
  std::optional<std::vector<Implication>> step3_applied;
  std::optional<StorySet> step3_stories;
  std::optional<StorySet> step4_stories;
};

namespace detail {

inline nlohmann::json story_to_json(const UserStory& story) {
  return nlohmann::json::array({story.role, story.feature});
}

inline UserStory story_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("user story must be a [role, feature] array");
  return {j[0].get<std::string>(), j[1].get<std::string>()};
}

inline nlohmann::json stories_to_json(const StorySet& set) {
  auto arr = nlohmann::json::array();
  for (const auto& story : set) arr.push_back(story_to_json(story));
  return arr;
}

inline StorySet stories_from_json(const nlohmann::json& j) {
  StorySet out;
  for (const auto& item : j) out.insert(story_from_json(item));
  return out;
}

inline nlohmann::json implication_to_json(const Implication& imp) {
  nlohmann::json j{{"support", imp.support}, {"conclusion", story_to_json(imp.conclusion)}};
  j["premise"] = imp.premise ? story_to_json(*imp.premise) : nlohmann::json(nullptr);
  return j;
}

inline Implication implication_from_json(const nlohmann::json& j) {
  Implication imp;
  imp.support = j.value("support", 0);
  if (j.contains("premise") && !j["premise"].is_null())
    imp.premise = story_from_json(j["premise"]);
  imp.conclusion = story_from_json(j.at("conclusion"));
  return imp;
}

inline nlohmann::json option_to_json(const DesignOption& option) {
  return {{"name", option.name},
          {"roles", option.roles},
          {"features", option.features},
          {"stories", stories_to_json(option.stories)}};
}

inline DesignOption option_from_json(const nlohmann::json& j) {
  DesignOption option;
  option.name = j.at("name").get<std::string>();
  option.roles = j.value("roles", std::vector<std::string>{});
  option.features = j.value("features", std::vector<std::string>{});
  if (j.contains("stories")) option.stories = stories_from_json(j["stories"]);
  return option;
}

}  // namespace detail

inline std::string now_iso_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string today_utc() {
  auto stamp = now_iso_utc();
  return stamp.substr(0, 10);
}

inline nlohmann::json transcript_to_json(const ConversationTranscript& t) {
  nlohmann::json j;
  j["schema"] = t.schema;
  j["id"] = t.id;
  j["date"] = t.date;
  j["model_config"] = {{"endpoint", t.endpoint},
                       {"model", t.model},
                       {"credential_env", t.credential_env},
                       {"temperature", t.temperature ? nlohmann::json(*t.temperature)
                                                     : nlohmann::json(nullptr)}};
  j["selected_options"] = t.selected_options;
  j["status"] = t.status;
  j["error"] = t.error;
  j["exchanges"] = nlohmann::json::array();
  for (const auto& e : t.exchanges)
    j["exchanges"].push_back({{"step", e.step},
                              {"prompt", e.prompt},
                              {"answer", e.answer},
                              {"timestamp", e.timestamp}});
  auto& parsed = j["parsed"] = nlohmann::json::object();
  if (t.step1_options) {
    auto arr = nlohmann::json::array();
    for (const auto& option : *t.step1_options) arr.push_back(detail::option_to_json(option));
    parsed["step1_options"] = arr;
  }
  if (t.step2_seed) parsed["step2_seed"] = detail::stories_to_json(*t.step2_seed);
  if (t.step3_applied) {
    auto arr = nlohmann::json::array();
    for (const auto& imp : *t.step3_applied) arr.push_back(detail::implication_to_json(imp));
    parsed["step3_applied"] = arr;
  }
  if (t.step3_stories) parsed["step3_stories"] = detail::stories_to_json(*t.step3_stories);
  if (t.step4_stories) parsed["step4_stories"] = detail::stories_to_json(*t.step4_stories);
  return j;
}

inline ConversationTranscript transcript_from_json(const nlohmann::json& j) {
  ConversationTranscript t;
  t.schema = j.value("schema", "");
  if (t.schema.rfind("usvar.transcript/", 0) != 0)
    throw ParseError("not a transcript document (schema '" + t.schema + "')");
  t.id = j.value("id", "");
  t.date = j.value("date", "");
  if (j.contains("model_config")) {
    const auto& mc = j["model_config"];
    t.endpoint = mc.value("endpoint", "");
    t.model = mc.value("model", "");
    t.credential_env = mc.value("credential_env", "");
    if (mc.contains("temperature") && !mc["temperature"].is_null())
      t.temperature = mc["temperature"].get<double>();
  }
  t.selected_options = j.value("selected_options", std::vector<std::string>{});
  t.status = j.value("status", "ok");
  t.error = j.value("error", "");
  if (!j.contains("exchanges") || !j["exchanges"].is_array() || j["exchanges"].empty())
    throw ParseError("transcript has no exchanges");
  for (const auto& e : j["exchanges"])
    t.exchanges.push_back({e.value("step", 0), e.at("prompt").get<std::string>(),
                           e.at("answer").get<std::string>(), e.value("timestamp", "")});
  const auto parsed = j.value("parsed", nlohmann::json::object());
  auto step_occurred = [&](int step) {
    for (const auto& e : t.exchanges)
      if (e.step == step) return true;
    return false;
  };
  auto require_step = [&](int step, const char* field) {
    if (!step_occurred(step))
      throw ParseError(std::string("parsed ") + field + " present without a step " +
                       std::to_string(step) + " exchange");
  };
  if (parsed.contains("step1_options")) {
    require_step(1, "step1_options");
    std::vector<DesignOption> options;
    for (const auto& option : parsed["step1_options"])
      options.push_back(detail::option_from_json(option));
    t.step1_options = std::move(options);
  }
  if (parsed.contains("step2_seed")) {
    require_step(2, "step2_seed");
    t.step2_seed = detail::stories_from_json(parsed["step2_seed"]);
  }
  if (parsed.contains("step3_applied")) {
    require_step(3, "step3_applied");
    std::vector<Implication> imps;
    for (const auto& imp : parsed["step3_applied"])
      imps.push_back(detail::implication_from_json(imp));
    t.step3_applied = std::move(imps);
  }
  if (parsed.contains("step3_stories")) {
    require_step(3, "step3_stories");
    t.step3_stories = detail::stories_from_json(parsed["step3_stories"]);
  }
  if (parsed.contains("step4_stories")) {
    require_step(4, "step4_stories");
    t.step4_stories = detail::stories_from_json(parsed["step4_stories"]);
  }
  return t;
}

// Stable text form with timestamps removed; two runs of the same replay must
// agree on this byte-for-byte.
inline std::string canonical_transcript(const ConversationTranscript& t) {
  auto j = transcript_to_json(t);
  for (auto& e : j["exchanges"]) e.erase("timestamp");
  return j.dump(2);
}

inline void save_transcript(const ConversationTranscript& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write transcript: " + path.string());
  out << transcript_to_json(t).dump(2) << "\n";
}

inline ConversationTranscript load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read transcript: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return transcript_from_json(j);
}

}  // namespace usvar
