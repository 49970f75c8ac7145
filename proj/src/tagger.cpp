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

#include "ugov/tagger.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ugov/errors.hpp"
#include "ugov/text.hpp"

namespace ugov {

namespace {

constexpr double kBoundaryEpsilon = 1e-9;

enum class CueKind { kHedge, kNegation };

struct Phrase {
  std::vector<std::string> words;
  CueKind kind;
};

std::vector<Phrase> compile(const TaggerConfig& config) {
  std::vector<Phrase> phrases;
  auto add = [&](const std::vector<std::string>& lexicon, CueKind kind) {
    for (const std::string& entry : lexicon) {
      Phrase phrase{{}, kind};
      for (text::Token& token : text::normalize(entry)) {
        phrase.words.push_back(std::move(token.word));
      }
      if (!phrase.words.empty()) phrases.push_back(std::move(phrase));
    }
  };
  add(config.negation_lexicon, CueKind::kNegation);
  add(config.hedge_lexicon, CueKind::kHedge);
  // Longest first; on equal length negation wins since it was added first.
  std::stable_sort(phrases.begin(), phrases.end(),
                   [](const Phrase& a, const Phrase& b) {
                     return a.words.size() > b.words.size();
                   });
  return phrases;
}

bool matches_at(const std::vector<text::Token>& tokens, std::size_t at,
                const Phrase& phrase) {
  if (at + phrase.words.size() > tokens.size()) return false;
  for (std::size_t j = 0; j < phrase.words.size(); ++j) {
    if (tokens[at + j].word != phrase.words[j]) return false;
    // A phrase may end on a clause boundary but not straddle one.
    if (j + 1 < phrase.words.size() && tokens[at + j].ends_clause) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> word_set(std::string_view s) {
  std::set<std::string> unique;
  for (text::Token& token : text::normalize(s)) {
    unique.insert(std::move(token.word));
  }
  return {unique.begin(), unique.end()};
}

}  // namespace

TaggerConfig TaggerConfig::defaults() {
  TaggerConfig config;
  config.hedge_lexicon = {
      "may",         "might",         "possibly",
      "could",       "unclear",       "uncertain",
      "not certain", "roughly",       "approximately",
      "suggest",     "likely",        "potentially",
      "estimated",   "may not be reliable", "not yet been finalised"};
  config.negation_lexicon = {"insufficient evidence",
                             "not possible to determine", "cannot determine",
                             "no evidence", "cannot be confirmed"};
  return config;
}

void TaggerConfig::validate() const {
  const double weights[] = {weight_hedge, weight_negation, weight_variance,
                            weight_logprob};
  for (double w : weights) {
    if (!(w >= 0.0)) throw ConfigError("tagger weights must be non-negative");
  }
  if (!(threshold_medium >= 0.0 && threshold_medium < threshold_high)) {
    throw ConfigError(
        "tagger thresholds must satisfy 0 <= threshold_medium < "
        "threshold_high");
  }
  if (!ablate_hedge && hedge_lexicon.empty()) {
    throw ConfigError("hedge lexicon is empty and hedge cues are not ablated");
  }
  if (!ablate_negation && negation_lexicon.empty()) {
    throw ConfigError(
        "negation lexicon is empty and negation cues are not ablated");
  }
}

double jaccard(const std::vector<std::string>& a,
               const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::vector<std::string> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  const std::size_t union_size = a.size() + b.size() - common.size();
  return static_cast<double>(common.size()) /
         static_cast<double>(union_size);
}

FeatureVector extract_features(
    std::span<const std::string> completions,
    const std::optional<std::vector<double>>& first_logprobs,
    const TaggerConfig& config) {
  if (completions.empty()) throw EmptyInput("no completions to tag");
  const std::vector<text::Token> tokens = text::normalize(completions[0]);
  if (tokens.empty()) throw EmptyInput("first completion has no words");

  FeatureVector features;
  features.word_count = tokens.size();

  const std::vector<Phrase> phrases = compile(config);
  std::size_t at = 0;
  while (at < tokens.size()) {
    const Phrase* hit = nullptr;
    for (const Phrase& phrase : phrases) {
      if (matches_at(tokens, at, phrase)) {
        hit = &phrase;
        break;
      }
    }
    if (hit == nullptr) {
      ++at;
      continue;
    }
    if (hit->kind == CueKind::kHedge) {
      ++features.hedge_hits;
    } else {
      ++features.negation_hits;
    }
    at += hit->words.size();
  }
  // Ablated cues still take part in matching so that switching a class
  // off never shifts how the other class is counted.
  if (config.ablate_hedge) features.hedge_hits = 0;
  if (config.ablate_negation) features.negation_hits = 0;

  if (completions.size() > 1) {
    std::vector<std::vector<std::string>> sets;
    sets.reserve(completions.size());
    for (const std::string& c : completions) sets.push_back(word_set(c));
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        total += jaccard(sets[i], sets[j]);
        ++pairs;
      }
    }
    features.ensemble_disagreement = 1.0 - total / static_cast<double>(pairs);
  }

  if (first_logprobs && !first_logprobs->empty()) {
    features.mean_logprob =
        std::accumulate(first_logprobs->begin(), first_logprobs->end(), 0.0) /
        static_cast<double>(first_logprobs->size());
  }
  return features;
}

double score(const FeatureVector& features, const TaggerConfig& config) {
  const double hedge =
      static_cast<double>(std::min<std::size_t>(features.hedge_hits, 3)) / 3.0;
  const double negation =
      static_cast<double>(std::min<std::size_t>(features.negation_hits, 2)) /
      2.0;
  double logprob_penalty = 0.0;
  if (features.mean_logprob) {
    logprob_penalty = std::clamp(-*features.mean_logprob / 5.0, 0.0, 1.0);
  }
  return config.weight_hedge * hedge + config.weight_negation * negation +
         config.weight_variance * features.ensemble_disagreement +
         config.weight_logprob * logprob_penalty;
}

UncertaintyTag threshold(double score, const TaggerConfig& config) {
  if (score >= config.threshold_high - kBoundaryEpsilon) {
    return UncertaintyTag::kHigh;
  }
  if (score >= config.threshold_medium - kBoundaryEpsilon) {
    return UncertaintyTag::kMedium;
  }
  return UncertaintyTag::kLow;
}

TagResult tag_completions(
    std::span<const std::string> completions,
    const std::optional<std::vector<double>>& first_logprobs,
    const TaggerConfig& config) {
  TagResult result;
  result.features = extract_features(completions, first_logprobs, config);
  result.score = score(result.features, config);
  result.tag = threshold(result.score, config);
  return result;
}

}  // namespace ugov
