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

#ifndef UGOV_PROVIDER_HPP_
#define UGOV_PROVIDER_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ugov {

struct GenerationRequest {
  // Lookup key for scripted providers; live backends ignore it.
  std::string prompt_id;
  std::string prompt_text;
  int k = 1;
  double temperature = 0.7;

  // Throws ProviderError unless k >= 1 and temperature is in [0, 2].
  void validate() const;
};

struct GenerationResult {
  std::vector<std::string> completions;
  // One list of token log-probabilities per completion, when the backend
  // exposes them.
  std::optional<std::vector<std::vector<double>>> token_logprobs;
  std::string provider_name;

  friend bool operator==(const GenerationResult&,
                         const GenerationResult&) = default;
};

// Text-generation backend. Implementations must tolerate concurrent
// generate() calls and throw ProviderError on failure.
class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  virtual GenerationResult generate(const GenerationRequest& request) const = 0;
  virtual std::string_view name() const = 0;
};

struct ScriptEntry {
  std::vector<std::string> completions;
  std::optional<std::vector<std::vector<double>>> logprobs;
};

// Deterministic provider that replays completions from a script keyed by
// prompt id (falling back to the prompt text). A strict provider fails on
// unscripted prompts and on requests for more completions than scripted;
// a lenient one answers with a fixed placeholder and cycles variants.
class ScriptedProvider final : public CompletionProvider {
 public:
  static constexpr std::string_view kPlaceholder =
      "No scripted completion is available for this prompt.";

  explicit ScriptedProvider(std::map<std::string, ScriptEntry> script,
                            bool strict = true);

  // Script JSON: {"<prompt id>": {"completions": [...],
  //                               "logprobs": [[...], ...]}}
  // Throws SchemaError.
  static ScriptedProvider from_json(std::string_view json, bool strict = true);

  GenerationResult generate(const GenerationRequest& request) const override;
  std::string_view name() const override { return "scripted"; }

  const std::map<std::string, ScriptEntry>& script() const { return script_; }
  bool strict() const { return strict_; }

 private:
  std::map<std::string, ScriptEntry> script_;
  bool strict_;
};

std::unique_ptr<ScriptedProvider> mock_from_script(
    const std::filesystem::path& path, bool strict = true);

// Chat-completions wire format used by the live adapter.
namespace chat {

std::string request_body(std::string_view model,
                         const GenerationRequest& request);

// Throws ProviderError when the reply is malformed or short of `k` choices.
GenerationResult parse_reply(std::string_view body, int k,
                             std::string provider_name);

}  // namespace chat

// Reads UGOV_LLM_BASE_URL, UGOV_LLM_MODEL and UGOV_LLM_API_KEY. Throws
// ProviderError if the build lacks live support or the variables are unset.
std::unique_ptr<CompletionProvider> make_live_provider_from_env();

}  // namespace ugov

#endif  // UGOV_PROVIDER_HPP_
