#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "usvar/errors.hpp"
#include "usvar/strings.hpp"

namespace usvar {

// A step prompt, kept as raw text with {{placeholder}} markers. Tagged blocks
// are lines starting with "<Tag>"; the tag structure is validated per step,
// rendering is plain placeholder substitution.
struct PromptTemplate {
  int step = 0;
  std::string text;

  struct Section {
    std::string tag;
    std::string body;
  };

  std::vector<Section> sections() const {
    std::vector<Section> out;
    for (auto line : split_lines(text)) {
      auto trimmed = trim(line);
      if (trimmed.size() > 3 && trimmed.front() == '<') {
        auto close = trimmed.find('>');
        if (close != std::string_view::npos && close >= 3) {
          auto tag = trimmed.substr(1, close - 1);
          bool plausible = !tag.empty();
          for (char c : tag)
            plausible &= (c == ' ' || c == '-' || c == '_' ||
                          (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                          (c >= '0' && c <= '9'));
          if (plausible) {
            out.push_back({std::string(tag), std::string(trim(trimmed.substr(close + 1)))});
            continue;
          }
        }
      }
      if (!out.empty() && !trimmed.empty()) {
        out.back().body += out.back().body.empty() ? "" : "\n";
        out.back().body += std::string(trimmed);
      }
    }
    return out;
  }

  std::vector<std::string> placeholders() const {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = text.find("{{", pos)) != std::string::npos) {
      auto end = text.find("}}", pos + 2);
      if (end == std::string::npos)
        throw ConfigError("step " + std::to_string(step) + " template: unterminated '{{'");
      out.push_back(std::string(trim(text.substr(pos + 2, end - pos - 2))));
      pos = end + 2;
    }
    return out;
  }

  void validate() const {
    if (step < 1 || step > 4)
      throw ConfigError("prompt step must be 1..4, got " + std::to_string(step));

    std::set<std::string> tags;
    std::size_t task_tags = 0;
    for (const auto& section : sections()) {
      std::string normalized;
      for (char c : fold_case(section.tag)) normalized += (c == '-' || c == '_') ? ' ' : c;
      tags.insert(normalized);
      if (normalized.rfind("task", 0) == 0) ++task_tags;
    }
    auto names = placeholders();
    std::set<std::string> holders(names.begin(), names.end());

    auto need_tag = [&](const std::string& tag) {
      if (!tags.count(tag))
        throw ConfigError("step " + std::to_string(step) + " template: missing <" + tag +
                          "> block");
    };
    auto need_placeholder = [&](const std::string& name) {
      if (!holders.count(name))
        throw ConfigError("step " + std::to_string(step) + " template: missing {{" + name +
                          "}} placeholder");
    };

    switch (step) {
      case 1:
        need_tag("role");
        need_tag("context");
        need_tag("syntax of data");
        need_placeholder("user_story_data");
        if (task_tags < 2)
          throw ConfigError("step 1 template: needs at least two <Task ...> blocks");
        break;
      case 2:
        need_placeholder("selected_options");
        break;
      case 3: {
        bool has_syntax_block = false;
        for (const auto& tag : tags)
          has_syntax_block |= tag.find("implication") != std::string::npos;
        if (!has_syntax_block)
          throw ConfigError("step 3 template: missing implication syntax block");
        need_placeholder("implication_data");
        break;
      }
      case 4:
        if (task_tags < 1) throw ConfigError("step 4 template: needs a <Task> block");
        break;
    }
  }

  static PromptTemplate load(int step, std::string body) {
    PromptTemplate tpl{step, std::move(body)};
    tpl.validate();
    return tpl;
  }
};

using RenderValues = std::map<std::string, std::string>;

// Deterministic placeholder substitution. Every marker must resolve to a
// non-empty value; data placeholders receive the configured file bytes as-is.
inline std::string render_prompt(const PromptTemplate& tpl, const RenderValues& values) {
  std::string out;
  out.reserve(tpl.text.size());
  std::size_t pos = 0;
  while (pos < tpl.text.size()) {
    auto open = tpl.text.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tpl.text, pos, std::string::npos);
      break;
    }
    out.append(tpl.text, pos, open - pos);
    auto end = tpl.text.find("}}", open + 2);
    if (end == std::string::npos)
      throw ConfigError("step " + std::to_string(tpl.step) + " template: unterminated '{{'");
    std::string name(trim(tpl.text.substr(open + 2, end - open - 2)));
    auto it = values.find(name);
    if (it == values.end())
      throw RenderError("unresolved placeholder '" + name + "' in step " +
                            std::to_string(tpl.step) + " template",
                        name);
    if (it->second.empty())
      throw RenderError("empty value for placeholder '" + name + "' in step " +
                            std::to_string(tpl.step) + " template",
                        name);
    out += it->second;
    pos = end + 2;
  }
  return out;
}

struct PromptTemplates {
  std::array<PromptTemplate, 4> steps;

  const PromptTemplate& step(int n) const {
    if (n < 1 || n > 4) throw ArgumentError("prompt step must be 1..4");
    return steps[static_cast<std::size_t>(n - 1)];
  }
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Loads step1.txt..step4.txt from a directory and validates each.
inline PromptTemplates load_templates(const std::filesystem::path& dir) {
  PromptTemplates out;
  for (int step = 1; step <= 4; ++step) {
    auto path = dir / ("step" + std::to_string(step) + ".txt");
    out.steps[static_cast<std::size_t>(step - 1)] =
        PromptTemplate::load(step, read_text_file(path));
  }
  return out;
}

}  // namespace usvar
