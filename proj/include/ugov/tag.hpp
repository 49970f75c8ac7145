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

#ifndef UGOV_TAG_HPP_
#define UGOV_TAG_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace ugov {

// Qualitative confidence level attached to a piece of generated text.
// The enumerator order is the caution order: low < medium < high.
enum class UncertaintyTag { kLow = 0, kMedium = 1, kHigh = 2 };

inline constexpr std::array<UncertaintyTag, 3> kAllTags = {
    UncertaintyTag::kLow, UncertaintyTag::kMedium, UncertaintyTag::kHigh};

std::string_view to_string(UncertaintyTag tag);
std::optional<UncertaintyTag> parse_tag(std::string_view text);

inline constexpr int index_of(UncertaintyTag tag) {
  return static_cast<int>(tag);
}

// The moral rule each tag activates.
enum class Virtue { kResponsibility, kDeference, kPrecaution };

Virtue virtue_of(UncertaintyTag tag);
std::string_view to_string(Virtue virtue);

}  // namespace ugov

#endif  // UGOV_TAG_HPP_
