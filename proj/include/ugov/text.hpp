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

#ifndef UGOV_TEXT_HPP_
#define UGOV_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Small text utilities shared by the tagger and the metrics. Everything
// here is byte-oriented; non-ASCII bytes are treated as word characters.
namespace ugov::text {

std::string to_lower_ascii(std::string_view s);

// Whitespace-delimited tokens, verbatim.
std::vector<std::string_view> split_whitespace(std::string_view s);

std::size_t word_count(std::string_view s);

// A lowercased word with surrounding ASCII punctuation removed.
// `ends_clause` is set when the stripped trailing punctuation contained
// one of . ! ? ; which stops multi-word phrases from matching across it.
struct Token {
  std::string word;
  bool ends_clause = false;
};

std::vector<Token> normalize(std::string_view s);

// Longest prefix of `s` holding at most `max_chars` UTF-8 code points.
std::string_view utf8_prefix(std::string_view s, std::size_t max_chars);

}  // namespace ugov::text

#endif  // UGOV_TEXT_HPP_
