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

#ifndef UGOV_PIPELINE_HPP_
#define UGOV_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ugov/corpus.hpp"
#include "ugov/provider.hpp"
#include "ugov/rulebase.hpp"
#include "ugov/tagger.hpp"

namespace ugov {

// Trace of one prompt through generate -> tag -> decide -> compose. When
// `error` is set the decision fields are all empty; otherwise all are set.
struct PipelineRecord {
  std::string prompt_id;
  std::string prompt_text;
  std::vector<std::string> completions;
  std::optional<FeatureVector> features;
  std::optional<double> score;
  std::optional<UncertaintyTag> system_tag;
  UncertaintyTag oracle_tag = UncertaintyTag::kLow;
  std::optional<std::string> action;
  std::optional<std::string> rationale;
  std::optional<std::string> composed_response;
  Demographic demographic = Demographic::kUnknown;
  std::uint64_t latency_micros = 0;
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }

  friend bool operator==(const PipelineRecord&,
                         const PipelineRecord&) = default;
};

struct PipelineDeps {
  const RuleBase& rules;
  const CompletionProvider& provider;
  const TaggerConfig& tagger;
  int k = 1;
  double temperature = 0.7;
};

// "Action: {action}\nExplanation: {rationale}\nResponse: {completion}"
std::string compose_response(const Decision& decision,
                             std::string_view first_completion);

// Never throws for provider or tagging failures; they land in `error`.
PipelineRecord run_prompt(const Prompt& prompt, const PipelineDeps& deps);

// Records come back in corpus order whatever the parallelism.
std::vector<PipelineRecord> run_prompts(const Corpus& corpus,
                                        const PipelineDeps& deps,
                                        int parallelism = 1);

struct RunConfig {
  std::filesystem::path corpus_path;
  std::filesystem::path ruleset_path;
  std::filesystem::path script_path;
  // Empty means built-in tagger defaults.
  std::filesystem::path tagger_config_path;
  int k = 1;
  double temperature = 0.7;
  // Empty means nothing is written.
  std::filesystem::path output_dir;
  int parallelism = 1;
  // Zero latencies so that outputs are byte-stable.
  bool stable = false;
  bool enforce_default_shape = false;
  bool ablate_hedge = false;
  bool ablate_negation = false;
  bool strict_provider = true;

  // Throws ConfigError if a referenced file is missing or a value is out
  // of range.
  void validate() const;
};

struct RunResult {
  Corpus corpus;
  std::vector<PipelineRecord> records;
  std::size_t ok = 0;
  std::size_t failed = 0;
};

// Loads every input named by `config` (throws on unreadable inputs), runs
// the corpus and writes outputs.json into output_dir when one is set.
RunResult run_corpus(const RunConfig& config);

// Same as above with the corpus supplied by the caller.
RunResult run_corpus(const RunConfig& config, const Corpus& corpus);

// The effective tagger configuration of a run: the file (or defaults)
// with the run's ablation switches applied on top.
TaggerConfig resolve_tagger_config(const RunConfig& config);

std::string records_to_json(const std::vector<PipelineRecord>& records);
std::vector<PipelineRecord> records_from_json(std::string_view json);
std::vector<PipelineRecord> load_records(const std::filesystem::path& path);
void write_records(const std::vector<PipelineRecord>& records,
                   const std::filesystem::path& path);

}  // namespace ugov

#endif  // UGOV_PIPELINE_HPP_
