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

#include <string>

#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"
#include "ugov/corpus.hpp"
#include "ugov/errors.hpp"
#include "ugov/provider.hpp"

using namespace ugov;
using ugov::testing::source_path;

namespace {

GenerationRequest request(std::string id, int k = 1) {
  GenerationRequest r;
  r.prompt_id = std::move(id);
  r.prompt_text = "text of " + r.prompt_id;
  r.k = k;
  return r;
}

}  // namespace

TEST_CASE("scripted provider echoes its script") {
  const ScriptedProvider p({{"p1", {{"hello"}, std::nullopt}}});
  const GenerationResult r = p.generate(request("p1"));
  CHECK(r.completions == std::vector<std::string>{"hello"});
  CHECK_FALSE(r.token_logprobs.has_value());
  CHECK(r.provider_name == "scripted");
}

TEST_CASE("k completions come back in script order") {
  const ScriptedProvider p(
      {{"p1", {{"a", "b", "c", "d", "e"}, std::nullopt}}});
  CHECK(p.generate(request("p1", 5)).completions ==
        std::vector<std::string>{"a", "b", "c", "d", "e"});
  CHECK(p.generate(request("p1", 2)).completions ==
        std::vector<std::string>{"a", "b"});
}

TEST_CASE("lookup falls back to the prompt text") {
  const ScriptedProvider p({{"text of q", {{"by text"}, std::nullopt}}});
  CHECK(p.generate(request("q")).completions[0] == "by text");
}

TEST_CASE("strict and lenient providers differ on gaps") {
  const std::map<std::string, ScriptEntry> script = {
      {"p1", {{"only", "two"}, std::nullopt}}};
  const ScriptedProvider strict(script, true);
  const ScriptedProvider lenient(script, false);
  CHECK_THROWS_AS(strict.generate(request("missing")), ProviderError);
  CHECK_THROWS_AS(strict.generate(request("p1", 3)), ProviderError);
  CHECK(lenient.generate(request("missing", 2)).completions ==
        std::vector<std::string>(2, std::string(ScriptedProvider::kPlaceholder)));
  CHECK(lenient.generate(request("p1", 3)).completions ==
        std::vector<std::string>{"only", "two", "only"});
}

TEST_CASE("request validation") {
  const ScriptedProvider p({{"p1", {{"x"}, std::nullopt}}});
  CHECK_THROWS_AS(p.generate(request("p1", 0)), ProviderError);
  GenerationRequest hot = request("p1");
  hot.temperature = 2.5;
  CHECK_THROWS_AS(p.generate(hot), ProviderError);
}

TEST_CASE("logprobs pass through per completion") {
  const ScriptedProvider p = ScriptedProvider::from_json(
      R"({"p1": {"completions": ["a", "b"],
                 "logprobs": [[-0.5, -1.0], [-2.0]]}})");
  const GenerationResult r = p.generate(request("p1", 2));
  REQUIRE(r.token_logprobs.has_value());
  CHECK((*r.token_logprobs)[0] == std::vector<double>{-0.5, -1.0});
  CHECK((*r.token_logprobs)[1] == std::vector<double>{-2.0});
}

TEST_CASE("script schema errors") {
  CHECK_THROWS_AS(ScriptedProvider::from_json("[]"), SchemaError);
  CHECK_THROWS_AS(ScriptedProvider::from_json("{oops"), SchemaError);
  CHECK_THROWS_AS(ScriptedProvider::from_json(R"({"p": {"completions": []}})"),
                  SchemaError);
  CHECK_THROWS_AS(ScriptedProvider::from_json(R"({"p": {"completions": [1]}})"),
                  SchemaError);
  CHECK_THROWS_AS(
      ScriptedProvider::from_json(R"({"p": {"completions": ["a"], "x": 1}})"),
      SchemaError);
  CHECK_THROWS_AS(ScriptedProvider::from_json(
                      R"({"p": {"completions": ["a"], "logprobs": []}})"),
                  SchemaError);
  CHECK_THROWS_AS(ScriptedProvider::from_json(
                      R"({"p": {"completions": ["a"], "logprobs": [[0.5]]}})"),
                  SchemaError);
}

TEST_CASE("chat request body") {
  GenerationRequest r = request("p1", 3);
  r.prompt_text = "Is it safe?";
  r.temperature = 0.5;
  const auto body = nlohmann::json::parse(chat::request_body("m-1", r));
  CHECK(body["model"] == "m-1");
  CHECK(body["n"] == 3);
  CHECK(body["temperature"] == 0.5);
  CHECK(body["messages"][0]["role"] == "user");
  CHECK(body["messages"][0]["content"] == "Is it safe?");
}

TEST_CASE("chat reply parsing") {
  const std::string reply = R"({"choices": [
      {"message": {"content": "one"},
       "logprobs": {"content": [{"logprob": -0.1}, {"logprob": -0.3}]}},
      {"message": {"content": "two"},
       "logprobs": {"content": [{"logprob": -1.0}]}}]})";
  const GenerationResult r = chat::parse_reply(reply, 2, "live");
  CHECK(r.completions == std::vector<std::string>{"one", "two"});
  REQUIRE(r.token_logprobs.has_value());
  CHECK((*r.token_logprobs)[0] == std::vector<double>{-0.1, -0.3});
  CHECK(r.provider_name == "live");

  const GenerationResult bare = chat::parse_reply(
      R"({"choices": [{"message": {"content": "x"}}]})", 1, "live");
  CHECK_FALSE(bare.token_logprobs.has_value());

  CHECK_THROWS_AS(chat::parse_reply(reply, 3, "live"), ProviderError);
  CHECK_THROWS_AS(chat::parse_reply("not json", 1, "live"), ProviderError);
  CHECK_THROWS_AS(chat::parse_reply(R"({"choices": [{}]})", 1, "live"),
                  ProviderError);
}

TEST_CASE("shipped scripts cover their corpora") {
  const auto pairs = {
      std::pair{"data/corpus/default.jsonl", "data/scripts/default.json"},
      std::pair{"data/corpus/environmental.jsonl",
                "data/scripts/environmental.json"}};
  for (const auto& [corpus_path, script_path] : pairs) {
    const Corpus c = load_corpus(source_path(corpus_path));
    const auto provider = mock_from_script(source_path(script_path));
    CHECK(provider->script().size() == c.prompts.size());
    for (const Prompt& p : c.prompts) {
      GenerationRequest r;
      r.prompt_id = p.id;
      r.prompt_text = p.text;
      CHECK_NOTHROW(provider->generate(r));
    }
  }
}

TEST_CASE("missing script file is an error") {
  CHECK_THROWS_AS(mock_from_script("/nonexistent/s.json"), Error);
}

#ifndef UGOV_HAVE_LIVE_PROVIDER
TEST_CASE("live provider is unavailable in this build") {
  CHECK_THROWS_AS(make_live_provider_from_env(), ProviderError);
}
#endif
