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

#include <cstdlib>
#include <string>

#include "httplib.h"
#include "ugov/errors.hpp"
#include "ugov/provider.hpp"

namespace ugov {

namespace {

class LiveProvider final : public CompletionProvider {
 public:
  LiveProvider(std::string base_url, std::string model, std::string api_key)
      : base_url_(std::move(base_url)),
        model_(std::move(model)),
        api_key_(std::move(api_key)) {}

  GenerationResult generate(const GenerationRequest& request) const override {
    request.validate();
    // httplib clients are not thread-safe, one per call.
    httplib::Client client(base_url_);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    httplib::Headers headers;
    if (!api_key_.empty()) {
      headers.emplace("Authorization", "Bearer " + api_key_);
    }
    auto reply = client.Post("/v1/chat/completions", headers,
                             chat::request_body(model_, request),
                             "application/json");
    if (!reply) {
      throw ProviderError("backend unreachable: " +
                          httplib::to_string(reply.error()));
    }
    if (reply->status != 200) {
      throw ProviderError("backend returned HTTP " +
                          std::to_string(reply->status));
    }
    return chat::parse_reply(reply->body, request.k, "live:" + model_);
  }

  std::string_view name() const override { return "live"; }

 private:
  std::string base_url_;
  std::string model_;
  std::string api_key_;
};

std::string env_or_empty(const char* name) {
  const char* value = std::getenv(name);
  return value == nullptr ? std::string() : std::string(value);
}

}  // namespace

std::unique_ptr<CompletionProvider> make_live_provider_from_env() {
  std::string base_url = env_or_empty("UGOV_LLM_BASE_URL");
  std::string model = env_or_empty("UGOV_LLM_MODEL");
  if (base_url.empty() || model.empty()) {
    throw ProviderError(
        "UGOV_LLM_BASE_URL and UGOV_LLM_MODEL must be set for the live "
        "provider");
  }
  return std::make_unique<LiveProvider>(std::move(base_url), std::move(model),
                                        env_or_empty("UGOV_LLM_API_KEY"));
}

}  // namespace ugov
