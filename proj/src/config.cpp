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

#include "ugov/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <yaml-cpp/yaml.h>

#include "ugov/errors.hpp"

namespace ugov {

namespace {

YAML::Node parse_map(std::string_view yaml, const std::set<std::string>& keys,
                     const char* what) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
  if (root.IsNull()) return YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) {
    throw ConfigError(std::string(what) + ": expected a key/value mapping");
  }
  for (const auto& item : root) {
    const auto key = item.first.as<std::string>();
    if (!keys.contains(key)) {
      throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
    }
  }
  return root;
}

template <typename T>
void read(const YAML::Node& root, const char* key, T& out) {
  if (!root[key]) return;
  try {
    out = root[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(std::string("config key '") + key +
                      "' has the wrong type");
  }
}

void read_path(const YAML::Node& root, const char* key,
               std::filesystem::path& out) {
  std::string value;
  read(root, key, value);
  if (root[key]) out = value;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TaggerConfig parse_tagger_config(std::string_view yaml) {
  static const std::set<std::string> kKeys = {
      "hedge_lexicon",   "negation_lexicon", "weight_hedge",
      "weight_negation", "weight_variance",  "weight_logprob",
      "threshold_medium", "threshold_high",  "ablate_hedge",
      "ablate_negation"};
  const YAML::Node root = parse_map(yaml, kKeys, "tagger config");
  TaggerConfig config = TaggerConfig::defaults();
  read(root, "hedge_lexicon", config.hedge_lexicon);
  read(root, "negation_lexicon", config.negation_lexicon);
  read(root, "weight_hedge", config.weight_hedge);
  read(root, "weight_negation", config.weight_negation);
  read(root, "weight_variance", config.weight_variance);
  read(root, "weight_logprob", config.weight_logprob);
  read(root, "threshold_medium", config.threshold_medium);
  read(root, "threshold_high", config.threshold_high);
  read(root, "ablate_hedge", config.ablate_hedge);
  read(root, "ablate_negation", config.ablate_negation);
  config.validate();
  return config;
}

TaggerConfig load_tagger_config(const std::filesystem::path& path) {
  return parse_tagger_config(slurp(path));
}

RunConfig parse_run_config(std::string_view yaml) {
  static const std::set<std::string> kKeys = {
      "corpus",      "rules",         "script",         "tagger_config",
      "k",           "temperature",   "out",            "parallelism",
      "stable",      "default_shape", "ablate_hedge",   "ablate_negation",
      "strict_provider"};
  const YAML::Node root = parse_map(yaml, kKeys, "run config");
  RunConfig config;
  read_path(root, "corpus", config.corpus_path);
  read_path(root, "rules", config.ruleset_path);
  read_path(root, "script", config.script_path);
  read_path(root, "tagger_config", config.tagger_config_path);
  read(root, "k", config.k);
  read(root, "temperature", config.temperature);
  read_path(root, "out", config.output_dir);
  read(root, "parallelism", config.parallelism);
  read(root, "stable", config.stable);
  read(root, "default_shape", config.enforce_default_shape);
  read(root, "ablate_hedge", config.ablate_hedge);
  read(root, "ablate_negation", config.ablate_negation);
  read(root, "strict_provider", config.strict_provider);
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(slurp(path));
}

}  // namespace ugov
