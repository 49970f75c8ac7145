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

#ifndef UGOV_RULEBASE_HPP_
#define UGOV_RULEBASE_HPP_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ugov/tag.hpp"

namespace ugov {

// A fact argument: either a bare lowercase atom or a double-quoted string.
struct Term {
  enum class Kind { kAtom, kString };

  Kind kind = Kind::kAtom;
  std::string value;

  static Term atom(std::string v) { return {Kind::kAtom, std::move(v)}; }
  static Term string(std::string v) { return {Kind::kString, std::move(v)}; }

  bool is_atom() const { return kind == Kind::kAtom; }
  bool is_string() const { return kind == Kind::kString; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct Fact {
  std::string predicate;
  std::vector<Term> args;

  friend bool operator==(const Fact&, const Fact&) = default;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

// Output of the syntax pass alone, before the totality check.
struct ParsedRules {
  std::vector<Fact> facts;
  // One line per skipped rule clause, "line N: ...".
  std::vector<std::string> warnings;
};

// Throws ParseError on malformed syntax. Clauses of the form
// `head :- body.` are consumed and reported in `warnings`.
ParsedRules parse_facts(std::string_view text);

struct Decision {
  UncertaintyTag tag = UncertaintyTag::kHigh;
  std::string action;
  std::string rationale;
  std::string ruleset_name;

  Virtue virtue() const { return virtue_of(tag); }

  friend bool operator==(const Decision&, const Decision&) = default;
};

// Validated, immutable fact store. Every tag has exactly one action/2
// fact and exactly one rationale/2 fact, so decide() is total.
class RuleBase {
 public:
  const std::vector<Fact>& facts() const { return facts_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::string& name() const { return name_; }
  const std::filesystem::path& source_path() const { return source_path_; }

  Decision decide(UncertaintyTag tag) const;

  // Facts rendered back into the rule grammar, one clause per line.
  std::string serialize() const;

 private:
  friend RuleBase parse_rule_file(std::string_view, std::string,
                                  std::filesystem::path);

  RuleBase() = default;

  std::vector<Fact> facts_;
  std::vector<std::string> warnings_;
  std::string name_;
  std::filesystem::path source_path_;
  // Index into facts_ per tag.
  std::array<std::size_t, 3> action_index_{};
  std::array<std::size_t, 3> rationale_index_{};
};

// Parses and validates. Throws ParseError or ValidationError.
RuleBase parse_rule_file(std::string_view text, std::string name = "inline",
                         std::filesystem::path source_path = {});

// Reads `path` and names the rule base after the file stem, so
// rules/canonical.pl becomes "canonical". Throws Error when unreadable.
RuleBase load_rule_file(const std::filesystem::path& path);

inline Decision decide(const RuleBase& rules, UncertaintyTag tag) {
  return rules.decide(tag);
}

}  // namespace ugov

#endif  // UGOV_RULEBASE_HPP_
