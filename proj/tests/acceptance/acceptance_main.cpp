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

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when a
// gating criterion fails; the latency benchmark only reports.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ugov/corpus.hpp"
#include "ugov/errors.hpp"
#include "ugov/metrics.hpp"
#include "ugov/pipeline.hpp"
#include "ugov/provider.hpp"
#include "ugov/rulebase.hpp"
#include "ugov/tagger.hpp"

namespace fs = std::filesystem;
using namespace ugov;

namespace {

fs::path src(const std::string& rel) { return fs::path(UGOV_SOURCE_DIR) / rel; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunConfig shipped_run() {
  RunConfig c;
  c.corpus_path = src("data/corpus/default.jsonl");
  c.ruleset_path = src("data/rules/canonical.pl");
  c.script_path = src("data/scripts/default.json");
  c.enforce_default_shape = true;
  c.stable = true;
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------

Outcome coverage_and_totality() {
  const auto start = std::chrono::steady_clock::now();
  const RunResult run = run_corpus(shipped_run());
  const EvaluationReport report = evaluate(run.records, run.corpus);
  bool total = true;
  for (const char* file : {"data/rules/canonical.pl", "data/rules/listing1.pl"}) {
    const RuleBase rules = load_rule_file(src(file));
    for (UncertaintyTag tag : kAllTags) {
      const Decision d = decide(rules, tag);
      total = total && !d.action.empty() && !d.rationale.empty();
    }
  }
  const double elapsed = seconds_since(start);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "coverage=%.2f over %zu prompts, total=%s, %.3fs",
                report.coverage, report.n_prompts, total ? "yes" : "no",
                elapsed);
  return {report.coverage == 1.0 && report.n_prompts == 20 && total &&
              elapsed < 5.0,
          buf};
}

Outcome rule_file_fidelity() {
  const RuleBase canonical = load_rule_file(src("data/rules/canonical.pl"));
  const std::vector<Fact> six = {
      {"action", {Term::atom("high"), Term::atom("warn_and_refer")}},
      {"action",
       {Term::atom("medium"), Term::atom("partial_answer_with_reference")}},
      {"action",
       {Term::atom("low"), Term::atom("full_answer_with_disclaimer")}},
      {"rationale",
       {Term::atom("high"),
        Term::string("Due to high uncertainty, we recommend consulting a "
                     "qualified expert before taking action.")}},
      {"rationale",
       {Term::atom("medium"),
        Term::string("The model's confidence is limited. We suggest "
                     "verifying this information with a human expert.")}},
      {"rationale",
       {Term::atom("low"),
        Term::string("This result is provided based on available data and "
                     "should be considered as a recommendation, not a "
                     "definitive judgment.")}},
  };
  const Decision high = decide(canonical, UncertaintyTag::kHigh);
  const RuleBase listing = load_rule_file(src("data/rules/listing1.pl"));
  const bool listing_ok =
      decide(listing, UncertaintyTag::kLow).action == "respond_confidently" &&
      decide(listing, UncertaintyTag::kMedium).action ==
          "respond_with_caution" &&
      decide(listing, UncertaintyTag::kHigh).action == "defer_to_human";
  const bool ok = canonical.facts() == six &&
                  high.action == "warn_and_refer" &&
                  high.rationale ==
                      "Due to high uncertainty, we recommend consulting a "
                      "qualified expert before taking action." &&
                  listing_ok;
  return {ok, "canonical facts=" + std::to_string(canonical.facts().size()) +
                  ", listing1 actions " + (listing_ok ? "match" : "differ")};
}

Outcome micro_case_goldens() {
  const Corpus corpus = load_corpus(src("data/corpus/environmental.jsonl"));
  const auto provider = mock_from_script(src("data/scripts/environmental.json"));
  const RuleBase canonical = load_rule_file(src("data/rules/canonical.pl"));
  const RuleBase listing = load_rule_file(src("data/rules/listing1.pl"));
  const TaggerConfig tagger = TaggerConfig::defaults();

  struct Expect {
    const char* id;
    UncertaintyTag tag;
    const RuleBase* rules;
    const char* action;
  };
  const Expect cases[] = {
      {"env_03", UncertaintyTag::kHigh, &canonical, "warn_and_refer"},
      {"env_02", UncertaintyTag::kMedium, &canonical,
       "partial_answer_with_reference"},
      {"env_01", UncertaintyTag::kLow, &listing, "respond_confidently"},
  };
  bool ok = true;
  std::string detail;
  for (const Expect& e : cases) {
    const Prompt* p = corpus.find(e.id);
    if (p == nullptr) return {false, std::string("missing ") + e.id};
    const PipelineRecord r = run_prompt(*p, {*e.rules, *provider, tagger});
    const bool hit = r.ok() && r.system_tag == e.tag && r.action == e.action;
    ok = ok && hit;
    detail += std::string(e.id) + "=" +
              (r.system_tag ? std::string(to_string(*r.system_tag)) : "error") +
              "/" + r.action.value_or("-") + " ";
  }
  return {ok, detail};
}

Outcome ablation_ordering() {
  const auto start = std::chrono::steady_clock::now();
  const AblationReport a = ablation_sweep(shipped_run());
  const double elapsed = seconds_since(start);
  const double full = a.accuracy("full");
  const double hedge = a.accuracy("hedge_ablated");
  const double negation = a.accuracy("negation_ablated");
  const double both = a.accuracy("both_ablated");
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "full=%.2f hedge_ablated=%.2f negation_ablated=%.2f "
                "both_ablated=%.2f, %.3fs",
                full, hedge, negation, both, elapsed);
  const bool ok = both <= hedge && negation <= full && hedge <= full &&
                  full - both >= 0.1 - 1e-12 && elapsed < 20.0;
  return {ok, buf};
}

Outcome masking_zeroes_delta() {
  const MaskingComparison m = masking_comparison(shipped_run());
  const Corpus corpus = load_corpus(src("data/corpus/default.jsonl"));
  const Corpus once = mask_demographics(corpus);
  const bool idempotent = mask_demographics(once) == once;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "original delta=%.2f, masked delta=%.2f, "
                "idempotent=%s", m.original.delta, m.masked.delta,
                idempotent ? "yes" : "no");
  return {m.masked.delta == 0.0 && m.original.delta >= 0.0 && idempotent, buf};
}

Outcome fairness_arithmetic() {
  Corpus corpus;
  corpus.name = "fairness_example";
  std::vector<PipelineRecord> records;
  for (int i = 0; i < 8; ++i) {
    const bool male = i < 4;
    Prompt p;
    p.id = (male ? "m" : "f") + std::to_string(i);
    p.text = "q";
    p.demographic = male ? Demographic::kMale : Demographic::kFemale;
    corpus.prompts.push_back(p);
    PipelineRecord r;
    r.prompt_id = p.id;
    r.completions = {"answer"};
    const bool warn = male && i == 0;
    r.system_tag = warn ? UncertaintyTag::kHigh : UncertaintyTag::kLow;
    r.action = warn ? "warn_and_refer" : "full_answer_with_disclaimer";
    r.rationale = "reason";
    r.composed_response = "x";
    records.push_back(r);
  }
  const FairnessReport f = fairness_audit(records, corpus);
  const double male = f.per_group_action_freq.at("male").at("warn_and_refer");
  const double female =
      f.per_group_action_freq.at("female").at("warn_and_refer");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "male=%.2f female=%.2f delta=%.2f", male,
                female, f.delta);
  return {male == 0.25 && female == 0.0 && f.delta == 0.25, buf};
}

Outcome readability_oracle() {
  struct Sentence {
    const char* text;
    double expected;
  };
  const Sentence sentences[] = {
      {"The cat sat.", 119.19},
      {"Please consult a qualified expert.", 49.48},
      {"Due to high uncertainty, we recommend consulting a qualified expert "
       "before taking action.",
       24.44},
      {"Consult a doctor. Rest at home.", 90.99},
      {"Uncertainty is moderate; please proceed with caution.", 30.53},
  };
  double worst = 0.0;
  for (const Sentence& s : sentences) {
    worst = std::max(worst, std::abs(readability(s.text) - s.expected));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max abs error=%.4f", worst);
  return {worst <= 0.01, buf};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "ugov_acceptance_det";
  fs::remove_all(root);
  std::string outputs[2];
  std::string csvs[2];
  for (int i = 0; i < 2; ++i) {
    RunConfig c = shipped_run();
    c.output_dir = root / (i == 0 ? "a" : "b");
    c.parallelism = i == 0 ? 1 : 4;
    fs::create_directories(c.output_dir);
    const RunResult run = run_corpus(c);
    write_evaluation_csv(evaluate(run.records, run.corpus),
                         c.output_dir / "evaluation.csv");
    outputs[i] = slurp(c.output_dir / "outputs.json");
    csvs[i] = slurp(c.output_dir / "evaluation.csv");
  }
  fs::remove_all(root);
  const bool ok = !outputs[0].empty() && outputs[0] == outputs[1] &&
                  !csvs[0].empty() && csvs[0] == csvs[1];
  return {ok, "outputs.json " + std::to_string(outputs[0].size()) +
                  " bytes, evaluation.csv " + std::to_string(csvs[0].size()) +
                  " bytes"};
}

Outcome confusion_consistency() {
  constexpr int kCases = 120;
  const std::vector<std::string> pieces = {
      "the", "answer", "is", "stable", "may", "might", "unclear",
      "no evidence", "cannot determine", "likely", "roughly", "court",
      "patient", ".", "insufficient evidence", "could"};
  const RuleBase rules = load_rule_file(src("data/rules/canonical.pl"));
  const TaggerConfig tagger = TaggerConfig::defaults();
  std::mt19937_64 rng(424242);
  int failures = 0;
  std::size_t total_mismatches = 0;
  for (int i = 0; i < kCases; ++i) {
    const Corpus corpus = generate_default_corpus(static_cast<std::uint64_t>(i));
    std::map<std::string, ScriptEntry> script;
    for (const Prompt& p : corpus.prompts) {
      if (rng() % 10 == 0) continue;  // leave some prompts unscripted
      std::string text;
      const int n = static_cast<int>(rng() % 12);
      for (int w = 0; w < n; ++w) text += pieces[rng() % pieces.size()] + " ";
      script[p.id] = {{text}, std::nullopt};
    }
    const ScriptedProvider provider(std::move(script), true);
    const auto records = run_prompts(corpus, {rules, provider, tagger}, 2);
    const EvaluationReport report = evaluate(records, corpus);
    std::size_t trace = 0;
    std::size_t sum = 0;
    for (int o = 0; o < 3; ++o) {
      for (int s = 0; s < 3; ++s) {
        sum += report.confusion[o][s];
        if (o == s) trace += report.confusion[o][s];
      }
    }
    const double accuracy =
        sum == 0 ? 0.0 : static_cast<double>(trace) / static_cast<double>(sum);
    const auto mismatches = error_analysis(records, corpus);
    total_mismatches += mismatches.size();
    if (sum != report.n_valid || accuracy != report.tagging_accuracy ||
        mismatches.size() != sum - trace) {
      ++failures;
    }
  }
  return {failures == 0, std::to_string(kCases) + " corpora, " +
                             std::to_string(failures) + " inconsistent, " +
                             std::to_string(total_mismatches) +
                             " mismatches checked"};
}

Outcome latency_benchmark() {
  RunConfig c = shipped_run();
  c.stable = false;
  double total = 0.0;
  std::size_t n = 0;
  for (int round = 0; round < 5; ++round) {
    for (const PipelineRecord& r : run_corpus(c).records) {
      total += static_cast<double>(r.latency_micros);
      ++n;
    }
  }
  const double mean_ms = total / static_cast<double>(n) / 1000.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "mean %.4f ms per prompt over %zu", mean_ms,
                n);
  return {mean_ms < 10.0, buf};
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    bool gating;
    std::function<Outcome()> check;
  };
  const Criterion criteria[] = {
      {1, "rule totality and coverage", true, coverage_and_totality},
      {2, "rule file fidelity", true, rule_file_fidelity},
      {3, "micro-case goldens", true, micro_case_goldens},
      {4, "ablation ordering", true, ablation_ordering},
      {5, "masking drives delta to zero", true, masking_zeroes_delta},
      {6, "fairness arithmetic", true, fairness_arithmetic},
      {7, "readability oracle", true, readability_oracle},
      {8, "determinism", true, determinism},
      {9, "confusion matrix consistency", true, confusion_consistency},
      {10, "latency benchmark (soft)", false, latency_benchmark},
  };
  int gating_failures = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const char* verdict = outcome.pass ? "PASS" : "FAIL";
    std::printf("%s criterion %d: %s (%s)\n", verdict, c.number, c.name,
                outcome.detail.c_str());
    if (!outcome.pass && c.gating) ++gating_failures;
  }
  std::printf("%d gating criteria failed; criterion 10 does not gate\n",
              gating_failures);
  return gating_failures == 0 ? 0 : 1;
}
