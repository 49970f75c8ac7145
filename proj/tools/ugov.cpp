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

// Command-line front end: one binary, one subcommand per operation.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ugov/config.hpp"
#include "ugov/corpus.hpp"
#include "ugov/errors.hpp"
#include "ugov/metrics.hpp"
#include "ugov/pipeline.hpp"
#include "ugov/rulebase.hpp"
#include "ugov/tagger.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr const char* kDefaultRules = "data/rules/canonical.pl";

// Run-level flags shared by run, audit and ablate. Each value only
// overrides the config file when the flag was given.
struct RunFlags {
  std::string config;
  std::string corpus;
  std::string rules;
  std::string script;
  std::string tagger_config;
  int k = 1;
  double temperature = 0.7;
  std::string out = "out";
  int parallelism = 1;
  bool stable = false;
  bool default_shape = false;
  bool ablate_hedge = false;
  bool ablate_negation = false;
  bool lenient = false;
  std::string format = "table";

  CLI::Option* k_opt = nullptr;
  CLI::Option* temperature_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* parallelism_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "YAML run config")
        ->check(CLI::ExistingFile);
    cmd->add_option("--corpus", corpus, "Corpus JSONL file");
    cmd->add_option("--rules", rules, "Rule file");
    cmd->add_option("--script", script, "Scripted completions JSON");
    cmd->add_option("--tagger-config", tagger_config, "YAML tagger config");
    k_opt = cmd->add_option("--k", k, "Completions per prompt")
                ->check(CLI::PositiveNumber);
    temperature_opt =
        cmd->add_option("--temperature", temperature, "Sampling temperature")
            ->check(CLI::Range(0.0, 2.0));
    out_opt = cmd->add_option("--out", out, "Output directory");
    parallelism_opt =
        cmd->add_option("--parallelism", parallelism, "Worker threads")
            ->check(CLI::PositiveNumber);
    cmd->add_flag("--stable", stable, "Zero latencies for byte-stable output");
    cmd->add_flag("--default-shape", default_shape,
                  "Enforce the 20-prompt default corpus layout");
    cmd->add_flag("--ablate-hedge", ablate_hedge, "Disable hedge cues");
    cmd->add_flag("--ablate-negation", ablate_negation,
                  "Disable negation cues");
    cmd->add_flag("--lenient", lenient,
                  "Answer unscripted prompts with a placeholder");
    cmd->add_option("--format", format, "Console output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
  }

  ugov::RunConfig resolve() const {
    ugov::RunConfig cfg =
        config.empty() ? ugov::RunConfig{} : ugov::load_run_config(config);
    if (!corpus.empty()) cfg.corpus_path = corpus;
    if (!rules.empty()) cfg.ruleset_path = rules;
    if (!script.empty()) cfg.script_path = script;
    if (!tagger_config.empty()) cfg.tagger_config_path = tagger_config;
    if (k_opt->count() > 0) cfg.k = k;
    if (temperature_opt->count() > 0) cfg.temperature = temperature;
    if (out_opt->count() > 0 || cfg.output_dir.empty()) cfg.output_dir = out;
    if (parallelism_opt->count() > 0) cfg.parallelism = parallelism;
    cfg.stable = cfg.stable || stable;
    cfg.enforce_default_shape = cfg.enforce_default_shape || default_shape;
    cfg.ablate_hedge = cfg.ablate_hedge || ablate_hedge;
    cfg.ablate_negation = cfg.ablate_negation || ablate_negation;
    if (lenient) cfg.strict_provider = false;
    return cfg;
  }
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ugov::Error("cannot write " + path.string());
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ugov::Error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string mismatches_csv(const std::vector<ugov::MismatchRow>& rows) {
  std::string out = "prompt_id,oracle_tag,system_tag,excerpt\n";
  for (const auto& row : rows) {
    std::string excerpt = "\"";
    for (char c : row.excerpt) {
      if (c == '"') excerpt += '"';
      excerpt += c;
    }
    excerpt += '"';
    out += row.prompt_id + "," + std::string(ugov::to_string(row.oracle_tag)) +
           "," + std::string(ugov::to_string(row.system_tag)) + "," +
           excerpt + "\n";
  }
  return out;
}

// Writes evaluation.csv, summary.json and mismatches.csv into `out` and
// prints the summary in the requested format.
void report_evaluation(const std::vector<ugov::PipelineRecord>& records,
                       const ugov::Corpus& corpus, const fs::path& out,
                       const std::string& format) {
  const ugov::EvaluationReport report = ugov::evaluate(records, corpus);
  const auto mismatches = ugov::error_analysis(records, corpus);
  fs::create_directories(out);
  ugov::write_evaluation_csv(report, out / "evaluation.csv");
  write_file(out / "summary.json", ugov::summary_json(report));
  write_file(out / "mismatches.csv", mismatches_csv(mismatches));
  for (const auto& w : ugov::fairness_audit(records, corpus).warnings) {
    std::cerr << "warning: " << w << "\n";
  }

  if (format == "json") {
    std::cout << ugov::summary_json(report);
  } else if (format == "csv") {
    std::cout << ugov::evaluation_csv(report);
  } else {
    std::cout << ugov::summary_table(report);
    if (!mismatches.empty()) {
      std::cout << "\nTagging errors\n" << ugov::mismatch_table(mismatches);
    }
  }
}

int cmd_respond(const std::optional<std::string>& text,
                const std::optional<std::string>& prompt_file,
                const std::string& rules_path,
                const std::string& tagger_path, bool ablate_hedge,
                bool ablate_negation, bool verbose) {
  const std::string completion = text ? *text : read_file(*prompt_file);
  const ugov::RuleBase rules = ugov::load_rule_file(rules_path);
  for (const auto& w : rules.warnings()) {
    if (verbose) std::cerr << "warning: " << rules_path << ": " << w << "\n";
  }
  ugov::TaggerConfig tagger = tagger_path.empty()
                                  ? ugov::TaggerConfig::defaults()
                                  : ugov::load_tagger_config(tagger_path);
  tagger.ablate_hedge = tagger.ablate_hedge || ablate_hedge;
  tagger.ablate_negation = tagger.ablate_negation || ablate_negation;
  tagger.validate();

  const std::vector<std::string> completions = {completion};
  const ugov::TagResult tagged =
      ugov::tag_completions(completions, std::nullopt, tagger);
  const ugov::Decision decision = rules.decide(tagged.tag);
  if (verbose) {
    std::cerr << "tag: " << ugov::to_string(tagged.tag) << " ("
              << ugov::to_string(decision.virtue()) << "), score "
              << tagged.score << "\n";
  }
  std::cout << ugov::compose_response(decision, completion) << "\n";
  return kExitOk;
}

int cmd_run(const RunFlags& flags) {
  const ugov::RunConfig cfg = flags.resolve();
  const ugov::RunResult result = ugov::run_corpus(cfg);
  report_evaluation(result.records, result.corpus, cfg.output_dir,
                    flags.format);
  std::cerr << "run: " << result.records.size() << " prompts, " << result.ok
            << " ok, " << result.failed << " failed; wrote "
            << (cfg.output_dir / "outputs.json").string() << "\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& records_path,
                 const std::string& corpus_path, const std::string& out,
                 const std::string& format) {
  const auto records = ugov::load_records(records_path);
  const ugov::Corpus corpus = ugov::load_corpus(corpus_path);
  report_evaluation(records, corpus, out, format);
  return kExitOk;
}

int cmd_audit(const RunFlags& flags) {
  const ugov::RunConfig cfg = flags.resolve();
  const ugov::MaskingComparison comparison = ugov::masking_comparison(cfg);
  fs::create_directories(cfg.output_dir);
  write_file(cfg.output_dir / "fairness.json", ugov::masking_json(comparison));
  for (const auto& w : comparison.masked.warnings) {
    std::cerr << "note (masked run): " << w << "\n";
  }
  if (flags.format == "json") {
    std::cout << ugov::masking_json(comparison);
  } else if (flags.format == "csv") {
    std::cout << ugov::masking_csv(comparison);
  } else {
    std::cout << ugov::masking_table(comparison);
  }
  return kExitOk;
}

int cmd_ablate(const RunFlags& flags) {
  const ugov::RunConfig cfg = flags.resolve();
  const ugov::AblationReport report = ugov::ablation_sweep(cfg);
  fs::create_directories(cfg.output_dir);
  write_file(cfg.output_dir / "ablation.json", ugov::ablation_json(report));
  if (flags.format == "json") {
    std::cout << ugov::ablation_json(report);
  } else if (flags.format == "csv") {
    std::cout << ugov::ablation_csv(report);
  } else {
    std::cout << ugov::ablation_table(report);
  }
  return kExitOk;
}

int cmd_gen_corpus(std::uint64_t seed, const std::string& out) {
  const ugov::Corpus corpus = ugov::generate_default_corpus(seed);
  ugov::check_default_shape(corpus);
  if (out.empty()) {
    std::cout << ugov::to_jsonl(corpus);
    return kExitOk;
  }
  fs::create_directories(out);
  const fs::path path = fs::path(out) / (corpus.name + ".jsonl");
  ugov::save_corpus(corpus, path);
  std::cerr << "gen-corpus: wrote " << corpus.prompts.size() << " prompts to "
            << path.string() << "\n";
  return kExitOk;
}

int cmd_validate_rules(const std::string& path) {
  try {
    const ugov::RuleBase rules = ugov::load_rule_file(path);
    for (const auto& w : rules.warnings()) {
      std::cerr << "warning: " << path << ": " << w << "\n";
    }
    std::cout << "OK: " << rules.facts().size()
              << " facts, totality satisfied\n";
    return kExitOk;
  } catch (const ugov::ValidationError& e) {
    std::cerr << path << ": invalid rule base\n";
    for (const auto& problem : e.problems()) {
      std::cerr << "  " << problem << "\n";
    }
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ugov: uncertainty tagging and moral-rule response engine"};
  app.require_subcommand(1);

  // respond
  auto* respond = app.add_subcommand(
      "respond", "Tag one piece of generated text and print the response");
  std::optional<std::string> text;
  std::optional<std::string> prompt_file;
  std::string respond_rules = kDefaultRules;
  std::string respond_tagger;
  bool respond_ablate_hedge = false;
  bool respond_ablate_negation = false;
  bool respond_verbose = false;
  auto* text_opt =
      respond->add_option("--text", text, "Generated text to respond to");
  auto* file_opt = respond
                       ->add_option("--prompt-file", prompt_file,
                                    "File holding the generated text")
                       ->check(CLI::ExistingFile);
  text_opt->excludes(file_opt);
  respond->add_option("--rules", respond_rules, "Rule file");
  respond->add_option("--tagger-config", respond_tagger, "YAML tagger config");
  respond->add_flag("--ablate-hedge", respond_ablate_hedge);
  respond->add_flag("--ablate-negation", respond_ablate_negation);
  respond->add_flag("-v,--verbose", respond_verbose,
                    "Print tag, virtue and score to stderr");

  // run / audit / ablate
  RunFlags run_flags;
  auto* run = app.add_subcommand(
      "run", "Run the pipeline over a corpus; write outputs.json and "
             "evaluation.csv");
  run_flags.attach(run);
  RunFlags audit_flags;
  auto* audit = app.add_subcommand(
      "audit", "Fairness audit before and after demographic masking");
  audit_flags.attach(audit);
  RunFlags ablate_flags;
  auto* ablate =
      app.add_subcommand("ablate", "Tagging accuracy under cue ablation");
  ablate_flags.attach(ablate);

  // evaluate
  auto* evaluate =
      app.add_subcommand("evaluate", "Compute metrics from an outputs.json");
  std::string records_path;
  std::string eval_corpus;
  std::string eval_out = "out";
  std::string eval_format = "table";
  evaluate->add_option("--records", records_path, "outputs.json")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--corpus", eval_corpus, "Corpus JSONL file")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--out", eval_out, "Output directory");
  evaluate->add_option("--format", eval_format, "Console output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  evaluate->add_flag("--stable", "Accepted for uniformity; outputs are "
                                  "always stable");

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus",
                                 "Generate a synthetic oracle-labelled corpus");
  std::uint64_t seed = 0;
  std::string gen_out;
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--out", gen_out,
                  "Output directory (prints JSONL to stdout when omitted)");
  gen->add_flag("--stable", "Accepted for uniformity; output is always "
                             "stable");

  // validate-rules
  auto* validate =
      app.add_subcommand("validate-rules", "Parse and validate a rule file");
  std::string validate_path;
  validate->add_option("file", validate_path, "Rule file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*respond) {
      if (!text && !prompt_file) {
        std::cerr << "respond: exactly one of --text or --prompt-file is "
                     "required\n";
        return kExitUsage;
      }
      return cmd_respond(text, prompt_file, respond_rules, respond_tagger,
                         respond_ablate_hedge, respond_ablate_negation,
                         respond_verbose);
    }
    if (*run) return cmd_run(run_flags);
    if (*audit) return cmd_audit(audit_flags);
    if (*ablate) return cmd_ablate(ablate_flags);
    if (*evaluate) {
      return cmd_evaluate(records_path, eval_corpus, eval_out, eval_format);
    }
    if (*gen) return cmd_gen_corpus(seed, gen_out);
    if (*validate) return cmd_validate_rules(validate_path);
  } catch (const ugov::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
