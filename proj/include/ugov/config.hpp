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

#ifndef UGOV_CONFIG_HPP_
#define UGOV_CONFIG_HPP_

#include <filesystem>
#include <string_view>

#include "ugov/pipeline.hpp"
#include "ugov/tagger.hpp"

// YAML config files. Keys left out keep their built-in defaults; unknown
// keys are rejected with ConfigError.
namespace ugov {

// Keys: hedge_lexicon, negation_lexicon (string lists), weight_hedge,
// weight_negation, weight_variance, weight_logprob, threshold_medium,
// threshold_high, ablate_hedge, ablate_negation.
TaggerConfig parse_tagger_config(std::string_view yaml);
TaggerConfig load_tagger_config(const std::filesystem::path& path);

// Keys: corpus, rules, script, tagger_config, k, temperature, out,
// parallelism, stable, default_shape, ablate_hedge, ablate_negation,
// strict_provider.
RunConfig parse_run_config(std::string_view yaml);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace ugov

#endif  // UGOV_CONFIG_HPP_
