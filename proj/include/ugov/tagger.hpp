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

#ifndef UGOV_TAGGER_HPP_
#define UGOV_TAGGER_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugov/tag.hpp"

namespace ugov {

// Lexicons, weights and thresholds of the surface-cue tagger. Lexicon
// entries are lowercase phrases; multi-word entries match contiguous words.
struct TaggerConfig {
  std::vector<std::string> hedge_lexicon;
  std::vector<std::string> negation_lexicon;
  double weight_hedge = 0.9;
  double weight_negation = 1.5;
  double weight_variance = 0.4;
  double weight_logprob = 0.3;
  double threshold_medium = 0.35;
  double threshold_high = 0.75;
  bool ablate_hedge = false;
  bool ablate_negation = false;

  static TaggerConfig defaults();

  // Throws ConfigError when thresholds, weights or lexicons are invalid.
  void validate() const;
};

struct FeatureVector {
  std::size_t hedge_hits = 0;
  std::size_t negation_hits = 0;
  // 1 - mean pairwise Jaccard similarity of the completions' word sets.
  double ensemble_disagreement = 0.0;
  std::optional<double> mean_logprob;
  std::size_t word_count = 0;

  friend bool operator==(const FeatureVector&,
                         const FeatureVector&) = default;
};

struct TagResult {
  UncertaintyTag tag = UncertaintyTag::kLow;
  double score = 0.0;
  FeatureVector features;

  friend bool operator==(const TagResult&, const TagResult&) = default;
};

// Cue counts come from the first completion, the one shown to the user;
// disagreement is measured across all of them. `first_logprobs` holds the
// token log-probabilities of the first completion, when available.
//
// Throws EmptyInput if there are no completions or the first has no words.
FeatureVector extract_features(
    std::span<const std::string> completions,
    const std::optional<std::vector<double>>& first_logprobs,
    const TaggerConfig& config);

// weight_hedge * min(hedges, 3) / 3 + weight_negation * min(negations, 2) / 2
//   + weight_variance * disagreement + weight_logprob * logprob_penalty
// where logprob_penalty = clamp(-mean_logprob / 5, 0, 1), 0 when absent.
double score(const FeatureVector& features, const TaggerConfig& config);

// Scores within 1e-9 below a threshold resolve to the higher tag.
UncertaintyTag threshold(double score, const TaggerConfig& config);

TagResult tag_completions(
    std::span<const std::string> completions,
    const std::optional<std::vector<double>>& first_logprobs,
    const TaggerConfig& config);

// Jaccard similarity of two word sets; two empty sets are identical.
double jaccard(const std::vector<std::string>& a,
               const std::vector<std::string>& b);

}  // namespace ugov

#endif  // UGOV_TAGGER_HPP_
