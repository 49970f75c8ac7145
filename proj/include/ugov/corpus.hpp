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

#ifndef UGOV_CORPUS_HPP_
#define UGOV_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ugov/tag.hpp"

namespace ugov {

enum class Domain { kClinical, kLegal, kEnvironmental };
enum class Demographic { kMale, kFemale, kUnknown };
enum class InfoSufficiency { kComplete, kPartial };
enum class RiskSeverity { kLow, kHigh };

std::string_view to_string(Domain domain);
std::string_view to_string(Demographic demographic);
std::string_view to_string(InfoSufficiency sufficiency);
std::string_view to_string(RiskSeverity severity);

struct Prompt {
  std::string id;
  Domain domain = Domain::kClinical;
  std::string text;
  UncertaintyTag oracle_tag = UncertaintyTag::kLow;
  Demographic demographic = Demographic::kUnknown;
  std::optional<int> age;
  InfoSufficiency info_sufficiency = InfoSufficiency::kComplete;
  RiskSeverity risk_severity = RiskSeverity::kLow;

  friend bool operator==(const Prompt&, const Prompt&) = default;
};

struct Corpus {
  std::string name;
  std::vector<Prompt> prompts;

  const Prompt* find(std::string_view id) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct CorpusLoadOptions {
  // Also require the 20 prompt, 10 clinical + 10 legal, 3/4/3 layout.
  bool enforce_default_shape = false;
};

// Throws SchemaError naming the line and field at fault, and ShapeError
// when `enforce_default_shape` is set and the layout does not hold.
Corpus parse_corpus_jsonl(std::string_view jsonl, std::string name,
                          CorpusLoadOptions options = {});
Corpus load_corpus(const std::filesystem::path& path,
                   CorpusLoadOptions options = {});

// One object per line, keys in schema order, LF terminated.
std::string to_jsonl(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

void check_default_shape(const Corpus& corpus);

// Rewrites "male, 45" style phrases and bare male/female words to
// "unknown".
std::string mask_text(std::string_view text);

// Every prompt becomes demographic=unknown with no age; ids, domains and
// oracle tags are kept. The result is named "<name>_masked".
Corpus mask_demographics(const Corpus& corpus);

// Deterministic for a given seed. Oracle tags follow a fixed per-domain
// slot layout, so the default shape holds for every seed; the seed picks
// templates, demographics, ages and the free sufficiency/severity levels.
Corpus generate_default_corpus(std::uint64_t seed);

}  // namespace ugov

#endif  // UGOV_CORPUS_HPP_
