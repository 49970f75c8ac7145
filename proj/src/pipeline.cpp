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

#include "ugov/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ugov/config.hpp"
#include "ugov/errors.hpp"

namespace ugov {

using ordered_json = nlohmann::ordered_json;

std::string compose_response(const Decision& decision,
                             std::string_view first_completion) {
  std::string out = "Action: ";
  out += decision.action;
  out += "\nExplanation: ";
  out += decision.rationale;
  out += "\nResponse: ";
  out += first_completion;
  return out;
}

PipelineRecord run_prompt(const Prompt& prompt, const PipelineDeps& deps) {
  const auto start = std::chrono::steady_clock::now();
  PipelineRecord record;
  record.prompt_id = prompt.id;
  record.prompt_text = prompt.text;
  record.oracle_tag = prompt.oracle_tag;
  record.demographic = prompt.demographic;

  try {
    GenerationRequest request{prompt.id, prompt.text, deps.k,
                              deps.temperature};
    GenerationResult generated = deps.provider.generate(request);
    if (generated.completions.size() != static_cast<std::size_t>(deps.k)) {
      throw ProviderError("provider returned " +
                          std::to_string(generated.completions.size()) +
                          " completions, " + std::to_string(deps.k) +
                          " requested");
    }
    record.completions = std::move(generated.completions);

    std::optional<std::vector<double>> first_logprobs;
    if (generated.token_logprobs && !generated.token_logprobs->empty()) {
      first_logprobs = generated.token_logprobs->front();
    }
    const TagResult tagged =
        tag_completions(record.completions, first_logprobs, deps.tagger);
    const Decision decision = deps.rules.decide(tagged.tag);

    record.features = tagged.features;
    record.score = tagged.score;
    record.system_tag = tagged.tag;
    record.action = decision.action;
    record.rationale = decision.rationale;
    record.composed_response =
        compose_response(decision, record.completions.front());
  } catch (const Error& e) {
    record.error = e.what();
  }

  const auto elapsed = std::chrono::steady_clock::now() - start;
  record.latency_micros = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count());
  return record;
}

std::vector<PipelineRecord> run_prompts(const Corpus& corpus,
                                        const PipelineDeps& deps,
                                        int parallelism) {
  const std::size_t n = corpus.prompts.size();
  std::vector<PipelineRecord> records(n);
  const auto workers = static_cast<std::size_t>(
      std::clamp<int>(parallelism, 1, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      records[i] = run_prompt(corpus.prompts[i], deps);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        records[i] = run_prompt(corpus.prompts[i], deps);
      }
    });
  }
  pool.clear();
  return records;
}

void RunConfig::validate() const {
  auto require = [](const std::filesystem::path& p, const char* what) {
    if (p.empty()) throw ConfigError(std::string(what) + " path is not set");
    if (!std::filesystem::exists(p)) {
      throw ConfigError(std::string(what) + " not found: " + p.string());
    }
  };
  require(corpus_path, "corpus");
  require(ruleset_path, "rule file");
  require(script_path, "script");
  if (!tagger_config_path.empty()) {
    require(tagger_config_path, "tagger config");
  }
  if (k < 1) throw ConfigError("k must be at least 1");
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ConfigError("temperature must lie in [0, 2]");
  }
  if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
}

TaggerConfig resolve_tagger_config(const RunConfig& config) {
  TaggerConfig tagger = config.tagger_config_path.empty()
                            ? TaggerConfig::defaults()
                            : load_tagger_config(config.tagger_config_path);
  tagger.ablate_hedge = tagger.ablate_hedge || config.ablate_hedge;
  tagger.ablate_negation = tagger.ablate_negation || config.ablate_negation;
  tagger.validate();
  return tagger;
}

RunResult run_corpus(const RunConfig& config) {
  config.validate();
  Corpus corpus = load_corpus(
      config.corpus_path,
      CorpusLoadOptions{.enforce_default_shape = config.enforce_default_shape});
  return run_corpus(config, corpus);
}

RunResult run_corpus(const RunConfig& config, const Corpus& corpus) {
  config.validate();
  const RuleBase rules = load_rule_file(config.ruleset_path);
  const auto provider =
      mock_from_script(config.script_path, config.strict_provider);
  const TaggerConfig tagger = resolve_tagger_config(config);

  RunResult result;
  result.corpus = corpus;
  const PipelineDeps deps{rules, *provider, tagger, config.k,
                          config.temperature};
  result.records = run_prompts(corpus, deps, config.parallelism);
  for (PipelineRecord& r : result.records) {
    if (config.stable) r.latency_micros = 0;
    (r.ok() ? result.ok : result.failed)++;
  }
  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    write_records(result.records, config.output_dir / "outputs.json");
  }
  return result;
}

namespace {

template <typename T>
ordered_json optional_json(const std::optional<T>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

ordered_json features_json(const FeatureVector& f) {
  ordered_json obj;
  obj["hedge_hits"] = f.hedge_hits;
  obj["negation_hits"] = f.negation_hits;
  obj["ensemble_disagreement"] = f.ensemble_disagreement;
  obj["mean_logprob"] = optional_json(f.mean_logprob);
  obj["word_count"] = f.word_count;
  return obj;
}

ordered_json record_json(const PipelineRecord& r) {
  ordered_json obj;
  obj["prompt_id"] = r.prompt_id;
  obj["prompt_text"] = r.prompt_text;
  obj["completions"] = r.completions;
  obj["features"] =
      r.features ? features_json(*r.features) : ordered_json(nullptr);
  obj["score"] = optional_json(r.score);
  obj["system_tag"] = r.system_tag ? ordered_json(to_string(*r.system_tag))
                                   : ordered_json(nullptr);
  obj["oracle_tag"] = to_string(r.oracle_tag);
  obj["action"] = optional_json(r.action);
  obj["rationale"] = optional_json(r.rationale);
  obj["composed_response"] = optional_json(r.composed_response);
  obj["demographic"] = to_string(r.demographic);
  obj["latency_micros"] = r.latency_micros;
  obj["error"] = optional_json(r.error);
  return obj;
}

UncertaintyTag tag_field(const ordered_json& v, const char* field) {
  const auto tag = v.is_string() ? parse_tag(v.get<std::string>())
                                 : std::nullopt;
  if (!tag) {
    throw SchemaError(std::string("record field '") + field +
                      "' is not an uncertainty tag");
  }
  return *tag;
}

std::optional<std::string> optional_string(const ordered_json& obj,
                                           const char* field) {
  if (!obj.contains(field) || obj[field].is_null()) return std::nullopt;
  return obj[field].get<std::string>();
}

PipelineRecord record_from_json(const ordered_json& obj) {
  PipelineRecord r;
  r.prompt_id = obj.at("prompt_id").get<std::string>();
  r.prompt_text = obj.at("prompt_text").get<std::string>();
  r.completions = obj.at("completions").get<std::vector<std::string>>();
  if (!obj.at("features").is_null()) {
    const ordered_json& f = obj["features"];
    FeatureVector features;
    features.hedge_hits = f.at("hedge_hits").get<std::size_t>();
    features.negation_hits = f.at("negation_hits").get<std::size_t>();
    features.ensemble_disagreement =
        f.at("ensemble_disagreement").get<double>();
    if (!f.at("mean_logprob").is_null()) {
      features.mean_logprob = f["mean_logprob"].get<double>();
    }
    features.word_count = f.at("word_count").get<std::size_t>();
    r.features = features;
  }
  if (!obj.at("score").is_null()) r.score = obj["score"].get<double>();
  if (!obj.at("system_tag").is_null()) {
    r.system_tag = tag_field(obj["system_tag"], "system_tag");
  }
  r.oracle_tag = tag_field(obj.at("oracle_tag"), "oracle_tag");
  r.action = optional_string(obj, "action");
  r.rationale = optional_string(obj, "rationale");
  r.composed_response = optional_string(obj, "composed_response");
  const std::string demographic = obj.at("demographic").get<std::string>();
  if (demographic == "male") {
    r.demographic = Demographic::kMale;
  } else if (demographic == "female") {
    r.demographic = Demographic::kFemale;
  } else if (demographic == "unknown") {
    r.demographic = Demographic::kUnknown;
  } else {
    throw SchemaError("record field 'demographic' is not male|female|unknown");
  }
  r.latency_micros = obj.at("latency_micros").get<std::uint64_t>();
  r.error = optional_string(obj, "error");
  return r;
}

}  // namespace

std::string records_to_json(const std::vector<PipelineRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const PipelineRecord& r : records) arr.push_back(record_json(r));
  return arr.dump(2) + "\n";
}

std::vector<PipelineRecord> records_from_json(std::string_view json) {
  std::vector<PipelineRecord> records;
  try {
    const ordered_json doc = ordered_json::parse(json);
    if (!doc.is_array()) throw SchemaError("records file must be a JSON array");
    for (const ordered_json& obj : doc) records.push_back(record_from_json(obj));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed records file: ") + e.what());
  }
  return records;
}

std::vector<PipelineRecord> load_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read records file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return records_from_json(buffer.str());
}

void write_records(const std::vector<PipelineRecord>& records,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << records_to_json(records);
}

}  // namespace ugov
