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

#include <map>
#include <string>

#include "doctest.h"
#include "test_support.hpp"
#include "ugov/corpus.hpp"
#include "ugov/errors.hpp"
#include "ugov/tagger.hpp"

using namespace ugov;
using ugov::testing::read_file;
using ugov::testing::source_path;

namespace {

const char* kLine =
    R"({"id":"x_01","domain":"clinical","text":"male, 45, has a cough.",)"
    R"("oracle_tag":"low","demographic":"male","age":45,)"
    R"("info_sufficiency":"complete","risk_severity":"low"})";

std::string with_replaced(std::string line, const std::string& from,
                          const std::string& to) {
  const std::size_t at = line.find(from);
  REQUIRE(at != std::string::npos);
  line.replace(at, from.size(), to);
  return line;
}

std::string schema_message(const std::string& jsonl) {
  try {
    parse_corpus_jsonl(jsonl, "t");
  } catch (const SchemaError& e) {
    return e.what();
  }
  FAIL("expected SchemaError for: " << jsonl);
  return {};
}

// Counts by domain and oracle tag.
std::map<std::pair<Domain, UncertaintyTag>, int> layout(const Corpus& c) {
  std::map<std::pair<Domain, UncertaintyTag>, int> out;
  for (const Prompt& p : c.prompts) ++out[{p.domain, p.oracle_tag}];
  return out;
}

}  // namespace

TEST_CASE("shipped default corpus has the 20 prompt layout") {
  const Corpus c = load_corpus(source_path("data/corpus/default.jsonl"),
                               {.enforce_default_shape = true});
  CHECK(c.name == "default");
  REQUIRE(c.prompts.size() == 20);
  int tags[3] = {0, 0, 0};
  for (const Prompt& p : c.prompts) ++tags[index_of(p.oracle_tag)];
  CHECK(tags[0] == 6);
  CHECK(tags[1] == 8);
  CHECK(tags[2] == 6);
  const auto counts = layout(c);
  for (Domain d : {Domain::kClinical, Domain::kLegal}) {
    CHECK(counts.at({d, UncertaintyTag::kLow}) == 3);
    CHECK(counts.at({d, UncertaintyTag::kMedium}) == 4);
    CHECK(counts.at({d, UncertaintyTag::kHigh}) == 3);
  }
  REQUIRE(c.find("med_01") != nullptr);
  CHECK(c.find("med_01")->domain == Domain::kClinical);
  CHECK(c.find("nope") == nullptr);
}

TEST_CASE("dropping a prompt breaks the default shape") {
  Corpus c = load_corpus(source_path("data/corpus/default.jsonl"));
  c.prompts.pop_back();
  CHECK_THROWS_AS(check_default_shape(c), ShapeError);
  std::string text = to_jsonl(c);
  CHECK_THROWS_AS(
      parse_corpus_jsonl(text, "short", {.enforce_default_shape = true}),
      ShapeError);
  CHECK_NOTHROW(parse_corpus_jsonl(text, "short"));
}

TEST_CASE("a well-formed line parses every field") {
  const Corpus c = parse_corpus_jsonl(kLine, "t");
  REQUIRE(c.prompts.size() == 1);
  const Prompt& p = c.prompts[0];
  CHECK(p.id == "x_01");
  CHECK(p.demographic == Demographic::kMale);
  CHECK(p.age == 45);
  CHECK(p.info_sufficiency == InfoSufficiency::kComplete);
  CHECK(p.risk_severity == RiskSeverity::kLow);
}

TEST_CASE("blank lines and CRLF endings are tolerated") {
  const std::string text = std::string(kLine) + "\r\n\n   \n";
  CHECK(parse_corpus_jsonl(text, "t").prompts.size() == 1);
}

TEST_CASE("schema violations name line and field") {
  std::string msg = schema_message(
      std::string(kLine) + "\n" +
      with_replaced(kLine, R"("oracle_tag":"low")", R"("oracle_tag":"extreme")"));
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("oracle_tag") != std::string::npos);

  msg = schema_message(with_replaced(kLine, R"(,"age":45)", ""));
  CHECK(msg.find("missing field 'age'") != std::string::npos);

  msg = schema_message(
      with_replaced(kLine, R"("age":45)", R"("age":45,"extra":1)"));
  CHECK(msg.find("unknown field 'extra'") != std::string::npos);

  msg = schema_message(std::string(kLine) + "\n" + kLine);
  CHECK(msg.find("duplicate id") != std::string::npos);

  schema_message(with_replaced(kLine, R"("age":45)", R"("age":"45")"));
  schema_message(with_replaced(kLine, R"("age":45)", R"("age":151)"));
  schema_message(with_replaced(kLine, R"("age":45)", R"("age":4.5)"));
  schema_message(with_replaced(kLine, "clinical", "financial"));
  schema_message(with_replaced(kLine, R"("demographic":"male")",
                               R"("demographic":"unknown")"));
  schema_message("{not json");
  schema_message("[1,2]");
}

TEST_CASE("mask_text rewrites demographic mentions") {
  CHECK(mask_text("male, 45, chest pain") == "unknown, chest pain");
  CHECK(mask_text("Female, 7, fever") == "unknown, fever");
  CHECK(mask_text("a female patient") == "a unknown patient");
  CHECK(mask_text("no demographics here") == "no demographics here");
  // Word boundaries: "females" and "tamale" are not touched.
  CHECK(mask_text("females like tamale") == "females like tamale");
}

TEST_CASE("masking clears demographics and is idempotent") {
  const Corpus c = load_corpus(source_path("data/corpus/default.jsonl"));
  const Corpus masked = mask_demographics(c);
  CHECK(masked.name == "default_masked");
  REQUIRE(masked.prompts.size() == c.prompts.size());
  for (std::size_t i = 0; i < c.prompts.size(); ++i) {
    const Prompt& m = masked.prompts[i];
    CHECK(m.id == c.prompts[i].id);
    CHECK(m.domain == c.prompts[i].domain);
    CHECK(m.oracle_tag == c.prompts[i].oracle_tag);
    CHECK(m.demographic == Demographic::kUnknown);
    CHECK_FALSE(m.age.has_value());
    CHECK(m.text.find("male") == std::string::npos);
  }
  CHECK(mask_demographics(masked) == masked);
}

TEST_CASE("generator keeps the default shape for many seeds") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Corpus c = generate_default_corpus(seed);
    CAPTURE(seed);
    REQUIRE_NOTHROW(check_default_shape(c));
    CHECK(c.name == "default_seed" + std::to_string(seed));
    std::map<std::pair<Domain, Demographic>, int> groups;
    for (const Prompt& p : c.prompts) {
      ++groups[{p.domain, p.demographic}];
      REQUIRE(p.age.has_value());
      CHECK(*p.age >= 18);
      CHECK(*p.age < 88);
      const std::string prefix = std::string(to_string(p.demographic)) +
                                 ", " + std::to_string(*p.age) + ", ";
      CHECK(p.text.rfind(prefix, 0) == 0);
      if (p.oracle_tag == UncertaintyTag::kLow) {
        CHECK(p.info_sufficiency == InfoSufficiency::kComplete);
      }
      if (p.oracle_tag == UncertaintyTag::kHigh) {
        CHECK(p.risk_severity == RiskSeverity::kHigh);
      }
    }
    for (Domain d : {Domain::kClinical, Domain::kLegal}) {
      CHECK(groups[{d, Demographic::kMale}] >= 4);
      CHECK(groups[{d, Demographic::kFemale}] >= 4);
    }
    // Serialized form parses back to the same corpus.
    CHECK(parse_corpus_jsonl(to_jsonl(c), c.name) == c);
  }
}

TEST_CASE("generator is deterministic per seed") {
  CHECK(to_jsonl(generate_default_corpus(3)) ==
        to_jsonl(generate_default_corpus(3)));
  CHECK(to_jsonl(generate_default_corpus(3)) !=
        to_jsonl(generate_default_corpus(4)));
}

TEST_CASE("shipped default corpus is the seed 0 output") {
  CHECK(to_jsonl(generate_default_corpus(0)) ==
        read_file(source_path("data/corpus/default.jsonl")));
}

TEST_CASE("save and reload round-trip") {
  const auto dir = ugov::testing::scratch_dir("corpus_roundtrip");
  const Corpus c = generate_default_corpus(9);
  save_corpus(c, dir / "copy.jsonl");
  Corpus back = load_corpus(dir / "copy.jsonl");
  CHECK(back.name == "copy");
  back.name = c.name;
  CHECK(back == c);
}

TEST_CASE("environmental corpus loads without the default shape") {
  const Corpus c = load_corpus(source_path("data/corpus/environmental.jsonl"));
  REQUIRE(c.prompts.size() == 3);
  CHECK(c.prompts[0].domain == Domain::kEnvironmental);
  CHECK_THROWS_AS(check_default_shape(c), ShapeError);
}

TEST_CASE("missing corpus file is an error") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/c.jsonl"), Error);
}
