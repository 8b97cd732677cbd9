#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "usvar/closure.hpp"
#include "usvar/errors.hpp"
#include "usvar/transcript.hpp"

namespace usvar {

// One row of the per-conversation comparison between the rule engine and the
// LLM: applied implications, step-3 stories, and step-3 versus step-4 stories.
struct ConversationMetrics {
  std::string conversation_id;
  std::string date;
  std::vector<std::string> selected_options;
  std::size_t n_seed = 0;
  std::size_t n_imp_rule = 0, n_imp_llm = 0, n_imp_both = 0;
  std::size_t n_us_rule = 0, n_us_llm = 0, n_us_both = 0;
  std::size_t n_us_step3 = 0, n_us_step4 = 0, n_us_both34 = 0;

  friend bool operator==(const ConversationMetrics&, const ConversationMetrics&) = default;
};

inline ConversationMetrics conversation_metrics(const ConversationTranscript& t,
                                                const ImplicationSet& imps) {
  if (!t.step2_seed)
    throw ArgumentError("transcript '" + t.id + "' has no parsed step 2 result");
  if (!t.step3_applied || !t.step3_stories)
    throw ArgumentError("transcript '" + t.id + "' has no parsed step 3 result");
  if (!t.step4_stories)
    throw ArgumentError("transcript '" + t.id + "' has no parsed step 4 result");

  ConversationMetrics row;
  row.conversation_id = t.id;
  row.date = t.date;
  row.selected_options = t.selected_options;
  row.n_seed = t.step2_seed->size();

  auto rule = close(*t.step2_seed, imps);
  auto imp_diff = diff_implications(rule.applied, *t.step3_applied);
  row.n_imp_rule = imp_diff.left_total();
  row.n_imp_llm = imp_diff.right_total();
  row.n_imp_both = imp_diff.both.size();

  auto us_diff = diff_stories(rule.derived, *t.step3_stories);
  row.n_us_rule = us_diff.left_total();
  row.n_us_llm = us_diff.right_total();
  row.n_us_both = us_diff.both.size();

  auto step34_diff = diff_stories(*t.step3_stories, *t.step4_stories);
  row.n_us_step3 = step34_diff.left_total();
  row.n_us_step4 = step34_diff.right_total();
  row.n_us_both34 = step34_diff.both.size();
  return row;
}

struct OptionCluster {
  std::string label;                 // most frequent member name
  std::vector<std::string> members;  // distinct option names in the cluster
  std::size_t frequency = 0;         // summaries containing at least one member
};

struct SimilarityReport {
  std::size_t n_summaries = 0;
  std::vector<std::size_t> per_summary_counts;
  double mean_options = 0.0;
  std::vector<OptionCluster> clusters;
  std::vector<std::string> majority_options;  // cluster labels in > n/2 summaries
};

namespace detail {

inline std::set<std::string> name_tokens(std::string_view name) {
  std::string cleaned;
  for (char c : fold_case(name))
    cleaned += (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ? c : ' ';
  std::set<std::string> tokens;
  for (auto token : split(cleaned, ' '))
    if (!token.empty()) tokens.insert(std::string(token));
  return tokens;
}

inline double overlap_coefficient(const std::set<std::string>& a,
                                  const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  std::size_t shared = 0;
  for (const auto& token : a) shared += b.count(token);
  return static_cast<double>(shared) / static_cast<double>(std::min(a.size(), b.size()));
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Deterministic replacement for the LLM-led similarity study: option names
// are normalized, options with token-overlap coefficient >= 0.5 cluster
// together, and per-cluster frequencies over the summaries are reported.
inline SimilarityReport summary_similarity(
    const std::vector<std::vector<DesignOption>>& summaries) {
  if (summaries.empty()) throw ArgumentError("summary_similarity needs at least one summary");

  SimilarityReport report;
  report.n_summaries = summaries.size();

  struct Item {
    std::size_t summary;
    std::string name;
    std::set<std::string> tokens;
  };
  std::vector<Item> items;
  std::size_t total_options = 0;
  for (std::size_t s = 0; s < summaries.size(); ++s) {
    report.per_summary_counts.push_back(summaries[s].size());
    total_options += summaries[s].size();
    for (const auto& option : summaries[s])
      items.push_back({s, option.name, detail::name_tokens(option.name)});
  }
  report.mean_options =
      static_cast<double>(total_options) / static_cast<double>(report.n_summaries);

  detail::UnionFind components(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j)
      if (detail::overlap_coefficient(items[i].tokens, items[j].tokens) >= 0.5)
        components.unite(i, j);

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < items.size(); ++i) groups[components.find(i)].push_back(i);

  for (const auto& [root, member_ids] : groups) {
    OptionCluster cluster;
    std::set<std::size_t> summaries_seen;
    std::map<std::string, std::size_t> name_counts;
    for (auto id : member_ids) {
      summaries_seen.insert(items[id].summary);
      ++name_counts[items[id].name];
    }
    for (const auto& [name, count] : name_counts) {
      cluster.members.push_back(name);
      if (cluster.label.empty() || count > name_counts[cluster.label]) cluster.label = name;
    }
    cluster.frequency = summaries_seen.size();
    report.clusters.push_back(std::move(cluster));
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [](const OptionCluster& a, const OptionCluster& b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              return a.label < b.label;
            });
  for (const auto& cluster : report.clusters)
    if (cluster.frequency * 2 > report.n_summaries)
      report.majority_options.push_back(cluster.label);
  return report;
}

enum class ReportFormat { csv, markdown };

struct EvalFailure {
  std::string conversation_id;
  std::string error;
};

namespace detail {

inline std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split_row(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(std::move(current));
  return fields;
}

inline std::string join_options(const std::vector<std::string>& options) {
  std::string out;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (i) out += "/";
    out += options[i];
  }
  return out;
}

inline std::string format_mean(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

}  // namespace detail

inline constexpr const char* kMetricsCsvHeader =
    "conversation,date,options,seed,imp_rule,imp_llm,imp_both,"
    "us_rule,us_llm,us_both,us_step3,us_step4,us_both34,status";

// CSV: one header plus one row per conversation, Table-4/5/6 column order.
// The similarity report is not representable in the row schema and is omitted
// in CSV output.
inline std::string emit_report_csv(const std::vector<ConversationMetrics>& rows,
                                   const std::vector<EvalFailure>& failures = {}) {
  std::string out = std::string(kMetricsCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += detail::csv_escape(r.conversation_id) + "," + detail::csv_escape(r.date) + "," +
           detail::csv_escape(detail::join_options(r.selected_options)) + "," +
           std::to_string(r.n_seed) + "," + std::to_string(r.n_imp_rule) + "," +
           std::to_string(r.n_imp_llm) + "," + std::to_string(r.n_imp_both) + "," +
           std::to_string(r.n_us_rule) + "," + std::to_string(r.n_us_llm) + "," +
           std::to_string(r.n_us_both) + "," + std::to_string(r.n_us_step3) + "," +
           std::to_string(r.n_us_step4) + "," + std::to_string(r.n_us_both34) + ",ok\n";
  }
  for (const auto& f : failures)
    out += detail::csv_escape(f.conversation_id) + ",,,,,,,,,,,,,failed\n";
  return out;
}

// Inverse of emit_report_csv for rows with status "ok".
inline std::vector<ConversationMetrics> parse_metrics_csv(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != kMetricsCsvHeader)
    throw ParseError("missing metrics CSV header", lines.empty() ? 0 : 1);
  std::vector<ConversationMetrics> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto fields = detail::csv_split_row(lines[i], i + 1);
    if (fields.size() != 14)
      throw ParseError("expected 14 columns, got " + std::to_string(fields.size()), i + 1);
    if (fields[13] == "failed") continue;
    ConversationMetrics row;
    row.conversation_id = fields[0];
    row.date = fields[1];
    if (!fields[2].empty())
      for (auto part : split(fields[2], '/')) row.selected_options.emplace_back(part);
    auto num = [&](std::size_t idx) {
      try {
        return static_cast<std::size_t>(std::stoull(fields[idx]));
      } catch (const std::exception&) {
        throw ParseError("column " + std::to_string(idx + 1) + " is not a count", i + 1);
      }
    };
    row.n_seed = num(3);
    row.n_imp_rule = num(4);
    row.n_imp_llm = num(5);
    row.n_imp_both = num(6);
    row.n_us_rule = num(7);
    row.n_us_llm = num(8);
    row.n_us_both = num(9);
    row.n_us_step3 = num(10);
    row.n_us_step4 = num(11);
    row.n_us_both34 = num(12);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline std::string md_cell(std::size_t value, bool emphasize) {
  auto text = std::to_string(value);
  return emphasize ? "**" + text + "**" : text;
}

}  // namespace detail

// Markdown: the three comparison tables with differing cells in bold, the
// failures, and the step-1 similarity study.
inline std::string emit_report_markdown(const std::vector<ConversationMetrics>& rows,
                                        const SimilarityReport* sim,
                                        const std::vector<EvalFailure>& failures = {}) {
  std::string out = "# Evaluation report\n";

  out += "\n## Implications applied at step 3\n\n";
  out += "| conversation | date | options | seed | rule engine | llm | both |\n";
  out += "|---|---|---|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    bool diff = r.n_imp_rule != r.n_imp_llm || r.n_imp_both != r.n_imp_rule;
    out += "| " + r.conversation_id + " | " + r.date + " | " +
           detail::join_options(r.selected_options) + " | " + std::to_string(r.n_seed) + " | " +
           detail::md_cell(r.n_imp_rule, diff) + " | " + detail::md_cell(r.n_imp_llm, diff) +
           " | " + detail::md_cell(r.n_imp_both, diff) + " |\n";
  }

  out += "\n## User stories computed at step 3\n\n";
  out += "| conversation | date | options | seed | rule engine | llm | both |\n";
  out += "|---|---|---|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    bool diff = r.n_us_rule != r.n_us_llm || r.n_us_both != r.n_us_rule;
    out += "| " + r.conversation_id + " | " + r.date + " | " +
           detail::join_options(r.selected_options) + " | " + std::to_string(r.n_seed) + " | " +
           detail::md_cell(r.n_us_rule, diff) + " | " + detail::md_cell(r.n_us_llm, diff) +
           " | " + detail::md_cell(r.n_us_both, diff) + " |\n";
  }

  out += "\n## User stories at step 3 versus step 4\n\n";
  out += "| conversation | date | options | seed | step 3 | step 4 | both |\n";
  out += "|---|---|---|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    bool removed = r.n_us_both34 != r.n_us_step3;
    out += "| " + r.conversation_id + " | " + r.date + " | " +
           detail::join_options(r.selected_options) + " | " + std::to_string(r.n_seed) + " | " +
           detail::md_cell(r.n_us_step3, removed) + " | " +
           detail::md_cell(r.n_us_step4, removed) + " | " +
           detail::md_cell(r.n_us_both34, removed) + " |\n";
  }

  if (!failures.empty()) {
    out += "\n## Failed transcripts\n\n";
    for (const auto& f : failures)
      out += "- " + f.conversation_id + ": " + f.error + "\n";
  }

  if (sim) {
    out += "\n## Step-1 summary similarity\n\n";
    out += "- summaries: " + std::to_string(sim->n_summaries) + "\n";
    out += "- mean options per summary: " + detail::format_mean(sim->mean_options) + "\n";
    out += "- option clusters in more than half of the summaries: " +
           std::to_string(sim->majority_options.size()) + "\n";
    out += "\n| cluster | summaries | members |\n|---|---:|---|\n";
    for (const auto& cluster : sim->clusters) {
      std::string members;
      for (std::size_t i = 0; i < cluster.members.size(); ++i) {
        if (i) members += ", ";
        members += cluster.members[i];
      }
      out += "| " + cluster.label + " | " + std::to_string(cluster.frequency) + " | " +
             members + " |\n";
    }
  }
  return out;
}

inline std::string emit_report(const std::vector<ConversationMetrics>& rows,
                               const SimilarityReport* sim, ReportFormat format,
                               const std::vector<EvalFailure>& failures = {}) {
  return format == ReportFormat::csv ? emit_report_csv(rows, failures)
                                     : emit_report_markdown(rows, sim, failures);
}

}  // namespace usvar
