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

#include "ugov/tag.hpp"

namespace ugov {

std::string_view to_string(UncertaintyTag tag) {
  switch (tag) {
    case UncertaintyTag::kLow:
      return "low";
    case UncertaintyTag::kMedium:
      return "medium";
    case UncertaintyTag::kHigh:
      return "high";
  }
  return "low";
}

std::optional<UncertaintyTag> parse_tag(std::string_view text) {
  if (text == "low") return UncertaintyTag::kLow;
  if (text == "medium") return UncertaintyTag::kMedium;
  if (text == "high") return UncertaintyTag::kHigh;
  return std::nullopt;
}

Virtue virtue_of(UncertaintyTag tag) {
  switch (tag) {
    case UncertaintyTag::kHigh:
      return Virtue::kPrecaution;
    case UncertaintyTag::kMedium:
      return Virtue::kDeference;
    case UncertaintyTag::kLow:
      return Virtue::kResponsibility;
  }
  return Virtue::kPrecaution;
}

std::string_view to_string(Virtue virtue) {
  switch (virtue) {
    case Virtue::kPrecaution:
      return "Precaution";
    case Virtue::kDeference:
      return "Deference";
    case Virtue::kResponsibility:
      return "Responsibility";
  }
  return "Precaution";
}

}  // namespace ugov
