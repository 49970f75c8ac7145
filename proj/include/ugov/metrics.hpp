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

#ifndef UGOV_METRICS_HPP_
#define UGOV_METRICS_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ugov/corpus.hpp"
#include "ugov/pipeline.hpp"

namespace ugov {

// ---------------------------------------------------------------------------
// Readability

struct TextStats {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t syllables = 0;
};

// Vowel groups over [aeiouy], minus a silent final 'e' (but not "-ee" or a
// consonant + "le" ending), never fewer than one.
std::size_t count_syllables(std::string_view word);

// Words are whitespace tokens containing a letter or digit. A sentence
// ends at a token whose trailing punctuation holds . ! or ?; trailing words
// with no terminator form a final sentence.
TextStats text_stats(std::string_view text);

// Flesch Reading Ease:
//   206.835 - 1.015 * words / sentences - 84.6 * syllables / words.
// Unclamped. Throws DegenerateText when the text has no words.
double readability(std::string_view text);

// Whitespace word count of `rationale` over that of `output`. Throws
// DegenerateText when `output` has no words.
double completeness(std::string_view rationale, std::string_view output);

// ---------------------------------------------------------------------------
// Evaluation

// confusion[oracle][system], indexed by index_of(tag).
using ConfusionMatrix = std::array<std::array<std::size_t, 3>, 3>;

struct EvaluationRow {
  std::string prompt_id;
  Domain domain = Domain::kClinical;
  Demographic demographic = Demographic::kUnknown;
  UncertaintyTag oracle_tag = UncertaintyTag::kLow;
  std::optional<UncertaintyTag> system_tag;
  std::optional<std::string> action;
  std::optional<double> flesch_reading_ease;
  std::optional<double> completeness_ratio;
  std::optional<std::string> error;
};

struct FairnessReport {
  // group -> action -> share of the group's valid records. Groups are
  // "female", "male" and "unknown"; every group lists every action seen.
  std::map<std::string, std::map<std::string, double>> per_group_action_freq;
  std::map<std::string, std::size_t> group_sizes;
  // max over actions of |freq(male) - freq(female)|.
  double delta = 0.0;
  std::size_t excluded_unknown = 0;
  std::vector<std::string> warnings;
};

struct EvaluationReport {
  double coverage = 0.0;
  double tagging_accuracy = 0.0;
  double fairness_delta = 0.0;
  double readability_mean = 0.0;
  double completeness_mean = 0.0;
  ConfusionMatrix confusion{};
  std::size_t n_prompts = 0;
  std::size_t n_valid = 0;
  std::vector<EvaluationRow> rows;
};

// Records and corpus must pair up one-to-one by prompt id (AlignmentError
// otherwise). Failed records count in the coverage denominator and are
// left out of every other metric.
EvaluationReport evaluate(const std::vector<PipelineRecord>& records,
                          const Corpus& corpus);

// Columns: prompt_id, domain, demographic, oracle_tag, system_tag, action,
// flesch_reading_ease, completeness_ratio, error.
std::string evaluation_csv(const EvaluationReport& report);
void write_evaluation_csv(const EvaluationReport& report,
                          const std::filesystem::path& path);

std::string summary_json(const EvaluationReport& report);
std::string summary_table(const EvaluationReport& report);

// ---------------------------------------------------------------------------
// Fairness

FairnessReport fairness_audit(const std::vector<PipelineRecord>& records,
                              const Corpus& corpus);

struct MaskingComparison {
  FairnessReport original;
  FairnessReport masked;
};

// Runs the pipeline on the configured corpus and on its masked copy.
// Scripted completions are looked up by prompt id, so both runs see the
// same generated text.
MaskingComparison masking_comparison(const RunConfig& config);

std::string masking_json(const MaskingComparison& comparison);
std::string masking_table(const MaskingComparison& comparison);
std::string masking_csv(const MaskingComparison& comparison);

// ---------------------------------------------------------------------------
// Ablation

struct AblationReport {
  // Fixed order: full, hedge_ablated, negation_ablated, both_ablated.
  std::vector<std::pair<std::string, double>> rows;

  double accuracy(std::string_view setting) const;
};

AblationReport ablation_sweep(const RunConfig& config);

std::string ablation_json(const AblationReport& report);
std::string ablation_table(const AblationReport& report);
std::string ablation_csv(const AblationReport& report);

// ---------------------------------------------------------------------------
// Error analysis

struct MismatchRow {
  std::string prompt_id;
  UncertaintyTag oracle_tag = UncertaintyTag::kLow;
  UncertaintyTag system_tag = UncertaintyTag::kLow;
  // First 60 characters of the first completion.
  std::string excerpt;
};

// Valid records whose system tag differs from the oracle, sorted by id.
std::vector<MismatchRow> error_analysis(
    const std::vector<PipelineRecord>& records, const Corpus& corpus);

std::string mismatch_table(const std::vector<MismatchRow>& rows);

}  // namespace ugov

#endif  // UGOV_METRICS_HPP_
