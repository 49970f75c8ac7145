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

#include "ugov/text.hpp"

namespace ugov::text {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return false;
  return !((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9'));
}

bool is_clause_end(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';';
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::size_t word_count(std::string_view s) {
  return split_whitespace(s).size();
}

std::vector<Token> normalize(std::string_view s) {
  std::vector<Token> out;
  for (std::string_view raw : split_whitespace(s)) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && is_ascii_punct(raw[begin])) ++begin;
    bool clause = false;
    while (end > begin && is_ascii_punct(raw[end - 1])) {
      if (is_clause_end(raw[end - 1])) clause = true;
      --end;
    }
    if (begin == end) {
      // Pure punctuation such as a dangling "--" or "...".
      for (char c : raw) clause = clause || is_clause_end(c);
      if (clause && !out.empty()) out.back().ends_clause = true;
      continue;
    }
    out.push_back({to_lower_ascii(raw.substr(begin, end - begin)), clause});
  }
  return out;
}

std::string_view utf8_prefix(std::string_view s, std::size_t max_chars) {
  std::size_t chars = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto lead = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    if (chars == max_chars) break;
    if (i + len > s.size()) break;
    i += len;
    ++chars;
  }
  return s.substr(0, i);
}

}  // namespace ugov::text
