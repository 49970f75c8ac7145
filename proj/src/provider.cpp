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

#include "ugov/provider.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ugov/errors.hpp"

namespace ugov {

using nlohmann::json;

void GenerationRequest::validate() const {
  if (k < 1) throw ProviderError("k must be at least 1");
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ProviderError("temperature must lie in [0, 2]");
  }
}

ScriptedProvider::ScriptedProvider(std::map<std::string, ScriptEntry> script,
                                   bool strict)
    : script_(std::move(script)), strict_(strict) {}

namespace {

ScriptEntry parse_entry(const std::string& id, const json& value) {
  const std::string where = "script entry '" + id + "'";
  if (!value.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& item : value.items()) {
    if (item.key() != "completions" && item.key() != "logprobs") {
      throw SchemaError(where + ": unknown field '" + item.key() + "'");
    }
  }
  if (!value.contains("completions") || !value["completions"].is_array() ||
      value["completions"].empty()) {
    throw SchemaError(where +
                      ": 'completions' must be a non-empty array of strings");
  }
  ScriptEntry entry;
  for (const json& c : value["completions"]) {
    if (!c.is_string()) {
      throw SchemaError(where + ": 'completions' must hold only strings");
    }
    entry.completions.push_back(c.get<std::string>());
  }
  if (value.contains("logprobs") && !value["logprobs"].is_null()) {
    const json& lp = value["logprobs"];
    if (!lp.is_array() || lp.size() != entry.completions.size()) {
      throw SchemaError(where +
                        ": 'logprobs' must hold one list per completion");
    }
    std::vector<std::vector<double>> lists;
    for (const json& list : lp) {
      if (!list.is_array()) {
        throw SchemaError(where + ": 'logprobs' entries must be arrays");
      }
      std::vector<double> values;
      for (const json& v : list) {
        if (!v.is_number() || v.get<double>() > 0.0) {
          throw SchemaError(where +
                            ": log-probabilities must be numbers <= 0");
        }
        values.push_back(v.get<double>());
      }
      lists.push_back(std::move(values));
    }
    entry.logprobs = std::move(lists);
  }
  return entry;
}

}  // namespace

ScriptedProvider ScriptedProvider::from_json(std::string_view text,
                                             bool strict) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("script is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw SchemaError("script must be a JSON object keyed by prompt id");
  }
  std::map<std::string, ScriptEntry> script;
  for (const auto& item : doc.items()) {
    script.emplace(item.key(), parse_entry(item.key(), item.value()));
  }
  return ScriptedProvider(std::move(script), strict);
}

GenerationResult ScriptedProvider::generate(
    const GenerationRequest& request) const {
  request.validate();
  auto it = script_.find(request.prompt_id);
  if (it == script_.end()) it = script_.find(request.prompt_text);

  GenerationResult result;
  result.provider_name = std::string(name());
  const auto k = static_cast<std::size_t>(request.k);
  if (it == script_.end()) {
    if (strict_) {
      throw ProviderError("no scripted completion for prompt '" +
                          request.prompt_id + "'");
    }
    result.completions.assign(k, std::string(kPlaceholder));
    return result;
  }

  const ScriptEntry& entry = it->second;
  if (strict_ && entry.completions.size() < k) {
    throw ProviderError("prompt '" + request.prompt_id + "' has " +
                        std::to_string(entry.completions.size()) +
                        " scripted completions, " + std::to_string(k) +
                        " requested");
  }
  if (entry.logprobs) result.token_logprobs.emplace();
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t src = i % entry.completions.size();
    result.completions.push_back(entry.completions[src]);
    if (entry.logprobs) result.token_logprobs->push_back((*entry.logprobs)[src]);
  }
  return result;
}

std::unique_ptr<ScriptedProvider> mock_from_script(
    const std::filesystem::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read script file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::make_unique<ScriptedProvider>(
      ScriptedProvider::from_json(buffer.str(), strict));
}

namespace chat {

std::string request_body(std::string_view model,
                         const GenerationRequest& request) {
  nlohmann::ordered_json body;
  body["model"] = model;
  body["messages"] = nlohmann::ordered_json::array(
      {{{"role", "user"}, {"content", request.prompt_text}}});
  body["n"] = request.k;
  body["temperature"] = request.temperature;
  body["logprobs"] = true;
  return body.dump();
}

GenerationResult parse_reply(std::string_view body, int k,
                             std::string provider_name) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProviderError(std::string("malformed reply: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("choices") ||
      !doc["choices"].is_array()) {
    throw ProviderError("malformed reply: missing 'choices' array");
  }
  const json& choices = doc["choices"];
  if (choices.size() < static_cast<std::size_t>(k)) {
    throw ProviderError("reply holds " + std::to_string(choices.size()) +
                        " choices, " + std::to_string(k) + " requested");
  }

  GenerationResult result;
  result.provider_name = std::move(provider_name);
  std::vector<std::vector<double>> logprobs;
  bool all_have_logprobs = true;
  for (int i = 0; i < k; ++i) {
    const json& choice = choices[static_cast<std::size_t>(i)];
    const json* content = nullptr;
    if (choice.contains("message") && choice["message"].is_object() &&
        choice["message"].contains("content")) {
      content = &choice["message"]["content"];
    }
    if (content == nullptr || !content->is_string()) {
      throw ProviderError("malformed reply: choice " + std::to_string(i) +
                          " has no message content");
    }
    result.completions.push_back(content->get<std::string>());

    std::vector<double> tokens;
    const bool has = choice.contains("logprobs") &&
                     choice["logprobs"].is_object() &&
                     choice["logprobs"].contains("content") &&
                     choice["logprobs"]["content"].is_array();
    if (has) {
      for (const json& t : choice["logprobs"]["content"]) {
        if (t.is_object() && t.contains("logprob") &&
            t["logprob"].is_number()) {
          tokens.push_back(t["logprob"].get<double>());
        }
      }
    }
    all_have_logprobs = all_have_logprobs && has;
    logprobs.push_back(std::move(tokens));
  }
  if (all_have_logprobs) result.token_logprobs = std::move(logprobs);
  return result;
}

}  // namespace chat

#ifndef UGOV_HAVE_LIVE_PROVIDER
std::unique_ptr<CompletionProvider> make_live_provider_from_env() {
  throw ProviderError(
      "this build has no live provider; configure with "
      "-DUGOV_LIVE_PROVIDER=ON");
}
#endif

}  // namespace ugov
