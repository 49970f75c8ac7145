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

#include "ugov/rulebase.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "ugov/errors.hpp"

namespace ugov {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) {
  return is_lower(c) || is_upper(c) || is_digit(c) || c == '_';
}
bool is_layout(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Head of a clause as seen by the parser. Variables are legal only when
// the clause turns out to be a rule.
struct Head {
  Fact fact;
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t first_variable_line = 0;
  std::size_t first_variable_column = 0;
  bool has_variable = false;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParsedRules run() {
    ParsedRules out;
    while (true) {
      skip_layout();
      if (at_end()) break;
      Head head = parse_head();
      skip_layout();
      if (peek() == ':' && peek(1) == '-') {
        advance();
        advance();
        skip_rule_body();
        out.warnings.push_back(
            "line " + std::to_string(head.line) + ": skipped rule " +
            head.fact.predicate + "/" +
            std::to_string(head.fact.args.size()) +
            " (clause bodies are not evaluated)");
        continue;
      }
      if (peek() != '.') fail("expected '.' or ':-' after clause head");
      if (head.has_variable) {
        throw ParseError("variables are only allowed in rule clauses",
                         head.first_variable_line,
                         head.first_variable_column);
      }
      advance();
      out.facts.push_back(std::move(head.fact));
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (at_end()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  void skip_comment() {
    while (!at_end() && peek() != '\n') advance();
  }

  void skip_layout() {
    while (!at_end()) {
      if (is_layout(peek())) {
        advance();
      } else if (peek() == '%') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  std::string parse_name() {
    std::string out;
    while (!at_end() && is_ident_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  std::string parse_string() {
    // Opening quote already checked by the caller.
    advance();
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string");
      const char c = peek();
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        advance();
        const char escaped = peek();
        if (escaped != '"' && escaped != '\\') {
          fail("unsupported escape sequence in string");
        }
        out += escaped;
        advance();
        continue;
      }
      out += c;
      advance();
    }
  }

  Head parse_head() {
    Head head;
    head.line = line_;
    head.column = column_;
    if (!is_lower(peek())) fail("expected a predicate name");
    head.fact.predicate = parse_name();
    skip_layout();
    if (peek() != '(') fail("expected '(' after predicate name");
    advance();
    while (true) {
      skip_layout();
      const char c = peek();
      if (is_lower(c)) {
        head.fact.args.push_back(Term::atom(parse_name()));
      } else if (c == '"') {
        head.fact.args.push_back(Term::string(parse_string()));
      } else if (is_upper(c) || c == '_') {
        if (!head.has_variable) {
          head.has_variable = true;
          head.first_variable_line = line_;
          head.first_variable_column = column_;
        }
        head.fact.args.push_back(Term::atom(parse_name()));
      } else if (c == ')' && head.fact.args.empty()) {
        fail("a fact needs at least one argument");
      } else {
        fail("expected an atom or a quoted string");
      }
      skip_layout();
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == ')') {
        advance();
        return head;
      }
      fail("expected ',' or ')' in argument list");
    }
  }

  void skip_quoted(char quote) {
    advance();
    while (true) {
      if (at_end()) fail("unterminated quoted text in rule body");
      if (peek() == '\\') {
        advance();
        advance();
        continue;
      }
      if (peek() == quote) {
        advance();
        return;
      }
      advance();
    }
  }

  // Consumes tokens up to the terminating full stop. Bodies may hold
  // variables, lists and format strings that the fact grammar rejects.
  void skip_rule_body() {
    const std::size_t start_line = line_;
    const std::size_t start_column = column_;
    int depth = 0;
    while (!at_end()) {
      const char c = peek();
      if (c == '"' || c == '\'') {
        skip_quoted(c);
      } else if (c == '%') {
        skip_comment();
      } else if (c == '(' || c == '[' || c == '{') {
        ++depth;
        advance();
      } else if (c == ')' || c == ']' || c == '}') {
        --depth;
        advance();
      } else if (c == '.' && depth <= 0 &&
                 (pos_ + 1 >= text_.size() || is_layout(peek(1)) ||
                  peek(1) == '%')) {
        advance();
        return;
      } else {
        advance();
      }
    }
    throw ParseError("rule clause is missing its terminating '.'",
                     start_line, start_column);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_term(const Term& term) {
  return term.is_atom() ? term.value : quote(term.value);
}

}  // namespace

ParsedRules parse_facts(std::string_view text) { return Parser(text).run(); }

RuleBase parse_rule_file(std::string_view text, std::string name,
                         std::filesystem::path source_path) {
  ParsedRules parsed = parse_facts(text);

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::array<std::vector<std::size_t>, 3> actions;
  std::array<std::vector<std::size_t>, 3> rationales;
  std::vector<std::string> problems;

  for (std::size_t i = 0; i < parsed.facts.size(); ++i) {
    const Fact& fact = parsed.facts[i];
    const bool is_action = fact.predicate == "action";
    const bool is_rationale = fact.predicate == "rationale";
    if ((!is_action && !is_rationale) || fact.args.size() != 2) continue;

    const Term& key = fact.args[0];
    const Term& value = fact.args[1];
    const auto tag = key.is_atom() ? parse_tag(key.value) : std::nullopt;
    if (!tag) {
      problems.push_back(fact.predicate + "(" + render_term(key) +
                         ", _) does not name an uncertainty tag");
      continue;
    }
    if (is_action && !value.is_atom()) {
      problems.push_back("action(" + key.value +
                         ", _) must map to an atom, not a string");
      continue;
    }
    if (is_rationale && !value.is_string()) {
      problems.push_back("rationale(" + key.value +
                         ", _) must map to a quoted string");
      continue;
    }
    (is_action ? actions : rationales)[index_of(*tag)].push_back(i);
  }

  RuleBase rules;
  rules.action_index_.fill(kUnset);
  rules.rationale_index_.fill(kUnset);
  auto check = [&](const char* predicate,
                   const std::array<std::vector<std::size_t>, 3>& found,
                   std::array<std::size_t, 3>& index) {
    for (UncertaintyTag tag : kAllTags) {
      const auto& hits = found[index_of(tag)];
      const std::string pair =
          std::string(predicate) + "(" + std::string(to_string(tag)) + ",_)";
      if (hits.empty()) {
        problems.push_back("missing " + pair);
      } else if (hits.size() > 1) {
        problems.push_back("duplicate " + pair + " (" +
                           std::to_string(hits.size()) + " facts)");
      } else {
        index[index_of(tag)] = hits.front();
      }
    }
  };
  check("action", actions, rules.action_index_);
  check("rationale", rationales, rules.rationale_index_);
  if (!problems.empty()) throw ValidationError(std::move(problems));

  rules.facts_ = std::move(parsed.facts);
  rules.warnings_ = std::move(parsed.warnings);
  rules.name_ = std::move(name);
  rules.source_path_ = std::move(source_path);
  return rules;
}

RuleBase load_rule_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read rule file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_rule_file(buffer.str(), path.stem().string(), path);
}

Decision RuleBase::decide(UncertaintyTag tag) const {
  const Fact& action = facts_[action_index_[index_of(tag)]];
  const Fact& rationale = facts_[rationale_index_[index_of(tag)]];
  return Decision{tag, action.args[1].value, rationale.args[1].value, name_};
}

std::string RuleBase::serialize() const {
  std::string out;
  for (const Fact& fact : facts_) {
    out += fact.predicate;
    out += '(';
    for (std::size_t i = 0; i < fact.args.size(); ++i) {
      if (i > 0) out += ", ";
      out += render_term(fact.args[i]);
    }
    out += ").\n";
  }
  return out;
}

}  // namespace ugov
