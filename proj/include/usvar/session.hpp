#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "usvar/answer_parse.hpp"
#include "usvar/chat.hpp"
#include "usvar/context.hpp"
#include "usvar/errors.hpp"
#include "usvar/implication_io.hpp"
#include "usvar/prompt.hpp"
#include "usvar/transcript.hpp"

namespace usvar {

struct SessionConfig {
  std::string id;    // defaults to a timestamp-derived id
  std::string date;  // defaults to today (UTC); replay copies the recording

  std::string endpoint;
  std::string model;
  std::string credential_env;  // empty = endpoint needs no credential
  std::optional<double> temperature;
  int max_retries = 2;

  std::string csv_text;           // user-story data embedded into step 1
  std::string implications_text;  // implication data embedded into step 3

  std::vector<std::string> preselected;  // non-empty = preselected mode
  std::string record_path;               // transcript output; empty = do not write
  std::string replay_path;               // non-empty = replay mode
};

// Presents the step-1 design options and returns the chosen names.
// May block indefinitely (human in the loop).
using OptionSelector =
    std::function<std::vector<std::string>(const std::vector<DesignOption>&)>;

namespace detail {

inline std::string default_session_id() {
  auto stamp = now_iso_utc();  // 2024-11-03T12:34:56Z
  std::string id = "conv-";
  for (char c : stamp)
    if (c != '-' && c != ':' && c != 'T' && c != 'Z') id += c;
  return id;
}

[[noreturn]] inline void fail_session(ConversationTranscript& transcript,
                                      const SessionConfig& config, const std::string& reason) {
  transcript.status = "failed";
  transcript.error = reason;
  std::string where;
  if (!config.record_path.empty() && !transcript.exchanges.empty()) {
    save_transcript(transcript, config.record_path);
    where = " (partial transcript saved to " + config.record_path + ")";
  }
  throw SessionError(reason + where);
}

inline std::vector<std::string> resolve_selection(const std::vector<std::string>& chosen,
                                                  const std::vector<DesignOption>& options) {
  if (chosen.empty()) throw SessionError("no design options selected");
  std::vector<std::string> resolved;
  for (const auto& name : chosen) {
    auto wanted = fold_case(trim(name));
    const DesignOption* match = nullptr;
    for (const auto& option : options)
      if (fold_case(option.name) == wanted) match = &option;
    if (!match) {
      std::string valid;
      for (const auto& option : options) {
        if (!valid.empty()) valid += ", ";
        valid += "'" + option.name + "'";
      }
      throw SessionError("unknown design option '" + std::string(trim(name)) +
                         "'; valid options: " + valid);
    }
    resolved.push_back(match->name);
  }
  return resolved;
}

inline std::string bracketed(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += " and ";
    out += names[i];
  }
  return out + "]";
}

}  // namespace detail

// Runs the 4-step protocol over the given transport: summary of design
// options, designer selection, initial story set, implication-consolidated
// set, refined set. The transcript is written to config.record_path, also
// when a step fails to parse (status "failed").
inline ConversationTranscript run_session(const SessionConfig& config,
                                          const PromptTemplates& templates,
                                          ChatTransport& transport,
                                          const OptionSelector& selector = {},
                                          const ConversationTranscript* replay_source = nullptr) {
  for (int step = 1; step <= 4; ++step) templates.step(step).validate();
  if (config.csv_text.empty()) throw ConfigError("session has no user-story data");
  auto known_stories = user_stories(parse_triples_csv(config.csv_text));
  parse_implications(config.implications_text);  // validate the step-3 embed early

  ConversationTranscript transcript;
  transcript.id = !config.id.empty() ? config.id
                 : replay_source    ? replay_source->id
                                    : detail::default_session_id();
  transcript.date = !config.date.empty() ? config.date
                    : replay_source     ? replay_source->date
                                        : today_utc();
  transcript.endpoint = !config.endpoint.empty() || !replay_source ? config.endpoint
                                                                   : replay_source->endpoint;
  transcript.model =
      !config.model.empty() || !replay_source ? config.model : replay_source->model;
  transcript.credential_env = config.credential_env;
  transcript.temperature = config.temperature  ? config.temperature
                           : replay_source     ? replay_source->temperature
                                               : std::nullopt;

  std::vector<ChatMessage> messages;
  auto run_step = [&](int step, const RenderValues& values) {
    std::string prompt = render_prompt(templates.step(step), values);
    std::string answer = chat_round(transport, messages, prompt);
    transcript.exchanges.push_back({step, prompt, answer, now_iso_utc()});
    return answer;
  };

  // step 1: design options summary
  std::string answer1 = run_step(1, {{"user_story_data", config.csv_text}});
  ParsedOptions parsed_options;
  try {
    parsed_options = parse_design_options(answer1, &known_stories);
  } catch (const ParseError& e) {
    detail::fail_session(transcript, config, std::string("step 1: ") + e.what());
  }
  transcript.step1_options = parsed_options.options;

  // designer selection, exactly once between steps 1 and 2
  try {
    std::vector<std::string> chosen;
    if (replay_source)
      chosen = replay_source->selected_options;
    else if (!config.preselected.empty())
      chosen = config.preselected;
    else if (selector)
      chosen = selector(parsed_options.options);
    else
      throw SessionError("no design-option selection available (no selector configured)");
    transcript.selected_options = detail::resolve_selection(chosen, parsed_options.options);
  } catch (const SessionError& e) {
    detail::fail_session(transcript, config, e.what());
  }

  // step 2: initial user-story set for the selection
  std::string answer2 =
      run_step(2, {{"selected_options", detail::bracketed(transcript.selected_options)}});
  try {
    transcript.step2_seed = parse_pairs(answer2);
  } catch (const ParseError& e) {
    detail::fail_session(transcript, config, std::string("step 2: ") + e.what());
  }

  // step 3: consolidation under the mined implications
  std::string answer3 = run_step(3, {{"step2_result", format_pairs(*transcript.step2_seed)},
                                     {"implication_data", config.implications_text}});
  try {
    auto step3 = parse_step3_answer(answer3);
    transcript.step3_applied = std::move(step3.applied);
    transcript.step3_stories = std::move(step3.stories);
  } catch (const ParseError& e) {
    detail::fail_session(transcript, config, std::string("step 3: ") + e.what());
  }

  // step 4: domain-knowledge refinement
  std::string answer4 = run_step(4, {});
  try {
    transcript.step4_stories = parse_final_pairs(answer4);
  } catch (const ParseError& e) {
    detail::fail_session(transcript, config, std::string("step 4: ") + e.what());
  }

  transcript.status = "ok";
  if (!config.record_path.empty()) save_transcript(transcript, config.record_path);
  return transcript;
}

// Builds the transport from the configuration: a replay of the recorded
// transcript when replay_path is set, the live HTTP endpoint otherwise.
inline ConversationTranscript run_session(const SessionConfig& config,
                                          const PromptTemplates& templates,
                                          const OptionSelector& selector = {}) {
  if (!config.replay_path.empty() && !config.endpoint.empty())
    throw ConfigError("live and replay modes are mutually exclusive");
  if (!config.replay_path.empty()) {
    auto source = load_transcript(config.replay_path);
    ReplayTransport transport(source);
    return run_session(config, templates, transport, selector, &transport.source());
  }
  if (config.endpoint.empty()) throw ConfigError("no endpoint configured");
  HttpEndpoint endpoint;
  endpoint.url = config.endpoint;
  endpoint.model = config.model;
  endpoint.temperature = config.temperature;
  endpoint.max_retries = config.max_retries;
  if (!config.credential_env.empty())
    endpoint.api_key = credential_from_env(config.credential_env);
  HttpChatTransport transport(endpoint);
  return run_session(config, templates, transport, selector, nullptr);
}

}  // namespace usvar
