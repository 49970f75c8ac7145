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

#include <algorithm>

#include "ugov/errors.hpp"
#include "ugov/metrics.hpp"
#include "ugov/text.hpp"

namespace ugov {

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

std::size_t count_syllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c >= 'a' && c <= 'z') w += c;
  }
  if (w.empty()) return 1;

  std::size_t groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool vowel = is_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }

  const std::size_t n = w.size();
  if (groups > 1 && w[n - 1] == 'e') {
    const bool double_e = n >= 2 && w[n - 2] == 'e';
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3]);
    if (!double_e && !consonant_le) --groups;
  }
  return std::max<std::size_t>(groups, 1);
}

TextStats text_stats(std::string_view text) {
  TextStats stats;
  bool open_sentence = false;
  for (std::string_view token : text::split_whitespace(text)) {
    if (std::any_of(token.begin(), token.end(), is_alnum)) {
      ++stats.words;
      stats.syllables += count_syllables(token);
      open_sentence = true;
    }
    std::size_t tail = token.size();
    while (tail > 0 && !is_alnum(token[tail - 1])) --tail;
    const bool ends = std::any_of(token.begin() + static_cast<long>(tail),
                                  token.end(), is_terminator);
    if (ends && open_sentence) {
      ++stats.sentences;
      open_sentence = false;
    }
  }
  if (open_sentence) ++stats.sentences;
  return stats;
}

double readability(std::string_view text) {
  const TextStats stats = text_stats(text);
  if (stats.words == 0 || stats.sentences == 0) {
    throw DegenerateText("readability needs at least one word");
  }
  const double words = static_cast<double>(stats.words);
  return 206.835 - 1.015 * (words / static_cast<double>(stats.sentences)) -
         84.6 * (static_cast<double>(stats.syllables) / words);
}

double completeness(std::string_view rationale, std::string_view output) {
  const std::size_t output_words = text::word_count(output);
  if (output_words == 0) {
    throw DegenerateText("completeness needs a non-empty output");
  }
  return static_cast<double>(text::word_count(rationale)) /
         static_cast<double>(output_words);
}

}  // namespace ugov
