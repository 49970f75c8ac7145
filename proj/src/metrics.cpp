/*
 * Copyright 2026 The ugov Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ugov/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ugov/errors.hpp"
#include "ugov/text.hpp"

namespace ugov {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kExcerptChars = 60;

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Pairs each record with its prompt; throws unless the ids match
// one-to-one.
std::vector<const Prompt*> align(const std::vector<PipelineRecord>& records,
                                 const Corpus& corpus) {
  std::vector<const Prompt*> prompts;
  prompts.reserve(records.size());
  std::set<std::string_view> seen;
  for (const PipelineRecord& r : records) {
    const Prompt* p = corpus.find(r.prompt_id);
    if (p == nullptr) {
      throw AlignmentError("record '" + r.prompt_id +
                           "' has no matching prompt in corpus '" +
                           corpus.name + "'");
    }
    if (!seen.insert(r.prompt_id).second) {
      throw AlignmentError("prompt '" + r.prompt_id +
                           "' has more than one record");
    }
    prompts.push_back(p);
  }
  for (const Prompt& p : corpus.prompts) {
    if (!seen.contains(p.id)) {
      throw AlignmentError("prompt '" + p.id + "' has no record");
    }
  }
  return prompts;
}

bool is_valid(const PipelineRecord& r) {
  return r.ok() && r.system_tag && r.action && r.rationale &&
         !r.completions.empty();
}

}  // namespace

EvaluationReport evaluate(const std::vector<PipelineRecord>& records,
                          const Corpus& corpus) {
  const std::vector<const Prompt*> prompts = align(records, corpus);
  EvaluationReport report;
  report.n_prompts = records.size();

  double readability_sum = 0.0;
  double completeness_sum = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const PipelineRecord& r = records[i];
    const Prompt& p = *prompts[i];
    EvaluationRow row;
    row.prompt_id = r.prompt_id;
    row.domain = p.domain;
    row.demographic = p.demographic;
    row.oracle_tag = p.oracle_tag;
    if (is_valid(r)) {
      row.system_tag = r.system_tag;
      row.action = r.action;
      row.flesch_reading_ease = readability(*r.rationale);
      row.completeness_ratio = completeness(*r.rationale, r.completions[0]);
      readability_sum += *row.flesch_reading_ease;
      completeness_sum += *row.completeness_ratio;
      ++report.confusion[index_of(p.oracle_tag)][index_of(*r.system_tag)];
      ++report.n_valid;
    } else {
      row.error = r.error.value_or("record has no decision");
    }
    report.rows.push_back(std::move(row));
  }

  std::size_t diagonal = 0;
  for (int t = 0; t < 3; ++t) diagonal += report.confusion[t][t];
  if (report.n_prompts > 0) {
    report.coverage = static_cast<double>(report.n_valid) /
                      static_cast<double>(report.n_prompts);
  }
  if (report.n_valid > 0) {
    const double valid = static_cast<double>(report.n_valid);
    report.tagging_accuracy = static_cast<double>(diagonal) / valid;
    report.readability_mean = readability_sum / valid;
    report.completeness_mean = completeness_sum / valid;
  }
  report.fairness_delta = fairness_audit(records, corpus).delta;
  return report;
}

std::string evaluation_csv(const EvaluationReport& report) {
  std::string out =
      "prompt_id,domain,demographic,oracle_tag,system_tag,action,"
      "flesch_reading_ease,completeness_ratio,error\n";
  for (const EvaluationRow& row : report.rows) {
    out += csv_field(row.prompt_id);
    out += ',';
    out += to_string(row.domain);
    out += ',';
    out += to_string(row.demographic);
    out += ',';
    out += to_string(row.oracle_tag);
    out += ',';
    if (row.system_tag) out += to_string(*row.system_tag);
    out += ',';
    if (row.action) out += csv_field(*row.action);
    out += ',';
    if (row.flesch_reading_ease) out += fixed(*row.flesch_reading_ease, 4);
    out += ',';
    if (row.completeness_ratio) out += fixed(*row.completeness_ratio, 4);
    out += ',';
    if (row.error) out += csv_field(*row.error);
    out += '\n';
  }
  return out;
}

void write_evaluation_csv(const EvaluationReport& report,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << evaluation_csv(report);
}

std::string summary_json(const EvaluationReport& report) {
  ordered_json obj;
  obj["n_prompts"] = report.n_prompts;
  obj["n_valid"] = report.n_valid;
  obj["coverage"] = report.coverage;
  obj["tagging_accuracy"] = report.tagging_accuracy;
  obj["fairness_delta"] = report.fairness_delta;
  obj["readability_mean"] = report.readability_mean;
  obj["completeness_mean"] = report.completeness_mean;
  ordered_json confusion;
  for (UncertaintyTag oracle : kAllTags) {
    ordered_json row;
    for (UncertaintyTag system : kAllTags) {
      row[std::string(to_string(system))] =
          report.confusion[index_of(oracle)][index_of(system)];
    }
    confusion[std::string(to_string(oracle))] = row;
  }
  obj["confusion"] = confusion;
  return obj.dump(2) + "\n";
}

std::string summary_table(const EvaluationReport& report) {
  std::ostringstream out;
  char line[128];
  auto row = [&](const char* name, const std::string& value) {
    std::snprintf(line, sizeof(line), "%-28s %10s\n", name, value.c_str());
    out << line;
  };
  row("Prompts", std::to_string(report.n_prompts));
  row("Coverage", fixed(report.coverage, 2));
  row("Tagging accuracy", fixed(report.tagging_accuracy, 2));
  row("Fairness delta", fixed(report.fairness_delta, 2));
  row("Readability (Flesch RE)", fixed(report.readability_mean, 1));
  row("Completeness ratio", fixed(report.completeness_mean, 2));
  out << "\nConfusion (rows: oracle, columns: system)\n";
  std::snprintf(line, sizeof(line), "%-8s %7s %7s %7s\n", "", "low",
                "medium", "high");
  out << line;
  for (UncertaintyTag oracle : kAllTags) {
    const auto& c = report.confusion[index_of(oracle)];
    std::snprintf(line, sizeof(line), "%-8s %7zu %7zu %7zu\n",
                  std::string(to_string(oracle)).c_str(), c[0], c[1], c[2]);
    out << line;
  }
  return out.str();
}

FairnessReport fairness_audit(const std::vector<PipelineRecord>& records,
                              const Corpus& corpus) {
  const std::vector<const Prompt*> prompts = align(records, corpus);
  FairnessReport report;

  std::set<std::string> actions;
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (Demographic d :
       {Demographic::kFemale, Demographic::kMale, Demographic::kUnknown}) {
    report.group_sizes[std::string(to_string(d))] = 0;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Demographic d = prompts[i]->demographic;
    if (d == Demographic::kUnknown) ++report.excluded_unknown;
    if (!is_valid(records[i])) continue;
    const std::string group(to_string(d));
    ++report.group_sizes[group];
    ++counts[group][*records[i].action];
    actions.insert(*records[i].action);
  }

  for (const auto& [group, size] : report.group_sizes) {
    auto& freq = report.per_group_action_freq[group];
    if (size == 0 && group != "unknown") {
      report.warnings.push_back("group '" + group +
                                "' has no valid records; its frequencies "
                                "are reported as 0");
    }
    for (const std::string& action : actions) {
      freq[action] = size == 0 ? 0.0
                               : static_cast<double>(counts[group][action]) /
                                     static_cast<double>(size);
    }
  }

  const auto& male = report.per_group_action_freq["male"];
  const auto& female = report.per_group_action_freq["female"];
  for (const std::string& action : actions) {
    report.delta =
        std::max(report.delta, std::abs(male.at(action) - female.at(action)));
  }
  return report;
}

MaskingComparison masking_comparison(const RunConfig& config) {
  RunConfig quiet = config;
  quiet.output_dir.clear();
  const RunResult original = run_corpus(quiet);
  const Corpus masked_corpus = mask_demographics(original.corpus);
  const RunResult masked = run_corpus(quiet, masked_corpus);
  return {fairness_audit(original.records, original.corpus),
          fairness_audit(masked.records, masked.corpus)};
}

namespace {

std::set<std::string> action_union(const MaskingComparison& c) {
  std::set<std::string> actions;
  for (const FairnessReport* r : {&c.original, &c.masked}) {
    for (const auto& [group, freq] : r->per_group_action_freq) {
      for (const auto& [action, value] : freq) actions.insert(action);
    }
  }
  return actions;
}

double freq_of(const FairnessReport& r, const std::string& group,
               const std::string& action) {
  const auto g = r.per_group_action_freq.find(group);
  if (g == r.per_group_action_freq.end()) return 0.0;
  const auto a = g->second.find(action);
  return a == g->second.end() ? 0.0 : a->second;
}

ordered_json fairness_json(const FairnessReport& r,
                           const std::set<std::string>& actions) {
  ordered_json obj;
  obj["delta"] = r.delta;
  obj["excluded_unknown"] = r.excluded_unknown;
  ordered_json sizes;
  for (const char* group : {"male", "female", "unknown"}) {
    sizes[group] = r.group_sizes.count(group) ? r.group_sizes.at(group) : 0;
  }
  obj["group_sizes"] = sizes;
  ordered_json freq;
  for (const char* group : {"male", "female", "unknown"}) {
    ordered_json per_action;
    for (const std::string& action : actions) {
      per_action[action] = freq_of(r, group, action);
    }
    freq[group] = per_action;
  }
  obj["per_group_action_freq"] = freq;
  return obj;
}

}  // namespace

std::string masking_json(const MaskingComparison& comparison) {
  const std::set<std::string> actions = action_union(comparison);
  ordered_json obj;
  obj["original"] = fairness_json(comparison.original, actions);
  obj["masked"] = fairness_json(comparison.masked, actions);
  return obj.dump(2) + "\n";
}

std::string masking_table(const MaskingComparison& comparison) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-48s %9s %9s\n", "", "Original",
                "Masked");
  out << line;
  auto row = [&](const std::string& name, double a, double b) {
    std::snprintf(line, sizeof(line), "%-48s %9s %9s\n", name.c_str(),
                  fixed(a, 2).c_str(), fixed(b, 2).c_str());
    out << line;
  };
  row("Fairness gap (delta)", comparison.original.delta,
      comparison.masked.delta);
  for (const std::string& action : action_union(comparison)) {
    for (const char* group : {"male", "female"}) {
      row(action + " freq (" + group + ")",
          freq_of(comparison.original, group, action),
          freq_of(comparison.masked, group, action));
    }
  }
  std::snprintf(line, sizeof(line), "%-48s %9zu %9zu\n",
                "Unknown-demographic prompts (excluded)",
                comparison.original.excluded_unknown,
                comparison.masked.excluded_unknown);
  out << line;
  return out.str();
}

std::string masking_csv(const MaskingComparison& comparison) {
  std::string out = "metric,original,masked\n";
  out += "delta," + fixed(comparison.original.delta, 4) + "," +
         fixed(comparison.masked.delta, 4) + "\n";
  for (const std::string& action : action_union(comparison)) {
    for (const char* group : {"male", "female"}) {
      out += csv_field(action + " freq (" + group + ")") + "," +
             fixed(freq_of(comparison.original, group, action), 4) + "," +
             fixed(freq_of(comparison.masked, group, action), 4) + "\n";
    }
  }
  return out;
}

double AblationReport::accuracy(std::string_view setting) const {
  for (const auto& [name, value] : rows) {
    if (name == setting) return value;
  }
  throw Error("unknown ablation setting '" + std::string(setting) + "'");
}

AblationReport ablation_sweep(const RunConfig& config) {
  struct Setting {
    const char* name;
    bool hedge;
    bool negation;
  };
  static constexpr Setting kSettings[] = {{"full", false, false},
                                          {"hedge_ablated", true, false},
                                          {"negation_ablated", false, true},
                                          {"both_ablated", true, true}};
  config.validate();
  const Corpus corpus = load_corpus(
      config.corpus_path,
      CorpusLoadOptions{.enforce_default_shape = config.enforce_default_shape});

  std::vector<std::future<double>> runs;
  for (const Setting& s : kSettings) {
    RunConfig variant = config;
    variant.output_dir.clear();
    variant.ablate_hedge = config.ablate_hedge || s.hedge;
    variant.ablate_negation = config.ablate_negation || s.negation;
    runs.push_back(std::async(std::launch::async, [variant, &corpus] {
      const RunResult run = run_corpus(variant, corpus);
      return evaluate(run.records, run.corpus).tagging_accuracy;
    }));
  }
  AblationReport report;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    report.rows.emplace_back(kSettings[i].name, runs[i].get());
  }
  return report;
}

std::string ablation_json(const AblationReport& report) {
  ordered_json obj;
  for (const auto& [name, value] : report.rows) obj[name] = value;
  return obj.dump(2) + "\n";
}

std::string ablation_table(const AblationReport& report) {
  std::ostringstream out;
  char line[96];
  std::snprintf(line, sizeof(line), "%-20s %16s\n", "Setting",
                "Tagging accuracy");
  out << line;
  for (const auto& [name, value] : report.rows) {
    std::snprintf(line, sizeof(line), "%-20s %16s\n", name.c_str(),
                  fixed(value, 2).c_str());
    out << line;
  }
  return out.str();
}

std::string ablation_csv(const AblationReport& report) {
  std::string out = "setting,tagging_accuracy\n";
  for (const auto& [name, value] : report.rows) {
    out += name + "," + fixed(value, 4) + "\n";
  }
  return out;
}

std::vector<MismatchRow> error_analysis(
    const std::vector<PipelineRecord>& records, const Corpus& corpus) {
  const std::vector<const Prompt*> prompts = align(records, corpus);
  std::vector<MismatchRow> rows;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const PipelineRecord& r = records[i];
    if (!is_valid(r) || *r.system_tag == prompts[i]->oracle_tag) continue;
    rows.push_back({r.prompt_id, prompts[i]->oracle_tag, *r.system_tag,
                    std::string(text::utf8_prefix(r.completions[0],
                                                  kExcerptChars))});
  }
  std::sort(rows.begin(), rows.end(),
            [](const MismatchRow& a, const MismatchRow& b) {
              return a.prompt_id < b.prompt_id;
            });
  return rows;
}

std::string mismatch_table(const std::vector<MismatchRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-12s %-8s %-8s %s\n", "Prompt ID",
                "Oracle", "System", "Excerpt");
  out << line;
  for (const MismatchRow& row : rows) {
    std::snprintf(line, sizeof(line), "%-12s %-8s %-8s \"%s\"\n",
                  row.prompt_id.c_str(),
                  std::string(to_string(row.oracle_tag)).c_str(),
                  std::string(to_string(row.system_tag)).c_str(),
                  row.excerpt.c_str());
    out << line;
  }
  return out.str();
}

}  // namespace ugov
