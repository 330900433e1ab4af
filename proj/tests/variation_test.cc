// Copyright 2026 The Reqdrop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reqdrop/variation.h"

#include <gtest/gtest.h>

#include "reqdrop/error.h"
#include "reqdrop/harness/synthetic.h"
#include "test_util.h"

namespace reqdrop {
namespace {

class ScriptedChat : public ChatClient {
 public:
  explicit ScriptedChat(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string Complete(const ChatRequest& request) override {
    requests.push_back(request);
    const size_t i = std::min(requests.size() - 1, replies_.size() - 1);
    return replies_[i];
  }
  std::string backend_id() const override { return "scripted"; }
  std::vector<ChatRequest> requests;

 private:
  std::vector<std::string> replies_;
};

const char kFiveKinds[] =
    R"({"c1":"Use 120-150 words","t1":"Length","c2":"Bold all key terms",)"
    R"("t2":"Format","c3":"Humorous and sarcastic tone","t3":"Style",)"
    R"("c4":"Name 3 scientists","t4":"Content","c5":"Exactly 5 sentences","t5":"Length"})";

SeedInstruction Seed() { return {"s1", "Write a poem", "test", std::nullopt}; }

ErrorKind KindOfFailure(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

TEST(ProposeTest, ParsesFiveRequirements) {
  ScriptedChat llm({kFiveKinds});
  const auto reqs = ProposeRequirements(Seed(), llm, 5, {});
  ASSERT_EQ(reqs.size(), 5u);
  EXPECT_EQ(reqs[0].kind, RequirementKind::kLength);
  EXPECT_EQ(reqs[1].kind, RequirementKind::kFormat);
  EXPECT_EQ(reqs[2].kind, RequirementKind::kStyle);
  EXPECT_EQ(reqs[3].kind, RequirementKind::kContent);
  EXPECT_EQ(reqs[4].text, "Exactly 5 sentences");
  for (int i = 0; i < 5; ++i) EXPECT_EQ(reqs[i].index, i + 1);
  EXPECT_NE(llm.requests[0].messages[0].content.find("Write a poem"), std::string::npos);
}

TEST(ProposeTest, ProseIsGenerationErrorAfterRetries) {
  ScriptedChat llm({"I would suggest making it longer."});
  GenerationOptions options;
  options.max_attempts = 3;
  EXPECT_EQ(KindOfFailure([&] { ProposeRequirements(Seed(), llm, 5, options); }),
            ErrorKind::kGeneration);
  ASSERT_EQ(llm.requests.size(), 3u);
  // Each retry carries the failed reply and a correction.
  EXPECT_EQ(llm.requests[2].messages.size(), 5u);
  EXPECT_EQ(llm.requests[2].messages[1].role, "assistant");
}

TEST(ProposeTest, RecoversOnSecondAttempt) {
  ScriptedChat llm({"not json", kFiveKinds});
  EXPECT_EQ(ProposeRequirements(Seed(), llm, 5, {}).size(), 5u);
  EXPECT_EQ(llm.requests.size(), 2u);
}

TEST(ProposeTest, AllOneKindIsValidationError) {
  std::string raw = "{";
  for (int i = 1; i <= 5; ++i) {
    raw += (i > 1 ? "," : "") + std::string("\"c") + std::to_string(i) + "\":\"Rule " +
           std::to_string(i) + "\",\"t" + std::to_string(i) + "\":\"Length\"";
  }
  raw += "}";
  ScriptedChat llm({raw});
  try {
    ProposeRequirements(Seed(), llm, 5, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("single-kind set"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("Rule 1"), std::string::npos);
  }
}

TEST(ParseTest, FencedJson) {
  const std::string raw = std::string("Sure!\n```json\n") + kFiveKinds + "\n```\nThanks";
  EXPECT_EQ(ParseConstraintJson(raw).size(), 5u);
}

TEST(ParseTest, MissingKeyNamesField) {
  Json j = Json::parse(kFiveKinds);
  j.erase("t3");
  try {
    ParseConstraintJson(j.dump());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("t3"), std::string::npos);
  }
}

TEST(ParseTest, EmptyTextUnknownKindAndExtraKey) {
  Json j = Json::parse(kFiveKinds);
  j["c2"] = "";
  EXPECT_EQ(KindOfFailure([&] { ParseConstraintJson(j.dump()); }), ErrorKind::kParse);
  j = Json::parse(kFiveKinds);
  j["t4"] = "Vibes";
  EXPECT_EQ(KindOfFailure([&] { ParseConstraintJson(j.dump()); }), ErrorKind::kParse);
  j = Json::parse(kFiveKinds);
  j["c6"] = "extra";
  EXPECT_EQ(KindOfFailure([&] { ParseConstraintJson(j.dump()); }), ErrorKind::kParse);
}

TEST(ParseTest, KindLabelNormalization) {
  Json j = Json::parse(kFiveKinds);
  j["t2"] = "length constraints";
  const auto parsed = ParseConstraintJson(j.dump());
  EXPECT_EQ(parsed[1].kind, RequirementKind::kLength);
  EXPECT_EQ(parsed[1].raw_kind, "length constraints");

  EXPECT_EQ(NormalizeKindLabel("Length"), RequirementKind::kLength);
  EXPECT_EQ(NormalizeKindLabel("  STYLE  "), RequirementKind::kStyle);
  EXPECT_EQ(NormalizeKindLabel("Stylistic Requirement"), RequirementKind::kStyle);
  EXPECT_EQ(NormalizeKindLabel("Formatting"), RequirementKind::kFormat);
  EXPECT_EQ(NormalizeKindLabel("Content Constraints"), RequirementKind::kContent);
  EXPECT_EQ(NormalizeKindLabel("Word Limit"), RequirementKind::kLength);
  EXPECT_EQ(NormalizeKindLabel("Tone"), RequirementKind::kStyle);
  EXPECT_EQ(NormalizeKindLabel("Required Entities"), RequirementKind::kContent);
  EXPECT_EQ(NormalizeKindLabel("output length type"), RequirementKind::kLength);
  EXPECT_EQ(NormalizeKindLabel("content and format"), std::nullopt);
  EXPECT_EQ(NormalizeKindLabel(""), std::nullopt);
  EXPECT_EQ(NormalizeKindLabel("misc"), std::nullopt);
}

TEST(ParseTest, BracesInsideStringsDoNotConfuseExtraction) {
  const auto obj = ExtractFirstJsonObject(R"(pre {"a":"x } y \" {","b":1} post {"c":2})");
  ASSERT_TRUE(obj.has_value());
  EXPECT_EQ((*obj)["b"], 1);
  EXPECT_FALSE(ExtractFirstJsonObject("no object here").has_value());
}

TEST(ParseTest, SerializeRoundTrip) {
  const auto parsed = ParseConstraintJson(kFiveKinds);
  EXPECT_EQ(ParseConstraintJson(SerializeConstraintJson(parsed)).size(), 5u);
  EXPECT_EQ(ParseConstraintJson(SerializeConstraintJson(parsed))[2].text,
            "Humorous and sarcastic tone");
}

TEST(ParseTest, OtherCounts) {
  const auto reply = synthetic::ConstraintReply(
      RenderConstraintPrompt(BuiltinConstraintTemplate(), "Q?", 3), 1);
  EXPECT_EQ(ParseConstraintJson(reply, 3).size(), 3u);
  EXPECT_THROW(ParseConstraintJson(reply, 5), Error);
}

TEST(ComposeTest, TemplateAndDeterminism) {
  const std::string a = ComposeText("Write a poem", {"Rhyme.", "Be short."});
  EXPECT_EQ(a, "Write a poem\n\nRequirements:\n1. Rhyme.\n2. Be short.");
  EXPECT_EQ(a, ComposeText("Write a poem", {"Rhyme.", "Be short."}));
  EXPECT_EQ(RequirementLinesOf(a), (std::vector<std::string>{"Rhyme.", "Be short."}));
  EXPECT_EQ(KindOfFailure([] { ComposeQuery(Seed(), {}); }), ErrorKind::kPrecondition);
}

TEST(ComposeTest, SeedContainingHeaderStillParses) {
  const std::string seed = "Explain this:\n\nRequirements:\n1. fake";
  const std::string text = ComposeText(seed, {"Real one."});
  EXPECT_EQ(RequirementLinesOf(text), std::vector<std::string>{"Real one."});
}

TEST(ComposeTest, QueryJsonRoundTrip) {
  std::vector<Requirement> reqs = {{1, RequirementKind::kStyle, "Be formal.", "Tone"},
                                   {2, RequirementKind::kLength, "Be short.", "Length"}};
  const AugmentedQuery q = ComposeQuery(Seed(), reqs);
  const AugmentedQuery back = AugmentedQueryFromJson(ToJson(q));
  EXPECT_EQ(ToJson(back), ToJson(q));
  Json bad = ToJson(q);
  bad["composed_text"] = "something else";
  EXPECT_THROW(AugmentedQueryFromJson(bad), Error);
}

TEST(ValidateTest, Rules) {
  using K = RequirementKind;
  std::vector<Requirement> ok = {{1, K::kLength, "a", ""}, {2, K::kLength, "b", ""},
                                 {3, K::kFormat, "c", ""}, {4, K::kStyle, "d", ""},
                                 {5, K::kContent, "e", ""}};
  EXPECT_TRUE(ValidateRequirements(ok).empty());

  std::vector<Requirement> same_text = ok;
  for (auto& r : same_text) r.text = "same";
  const auto v1 = ValidateRequirements(same_text);
  EXPECT_NE(std::find(v1.begin(), v1.end(), "duplicate text"), v1.end());

  std::vector<Requirement> one_kind = ok;
  for (auto& r : one_kind) r.kind = K::kStyle;
  const auto v2 = ValidateRequirements(one_kind);
  EXPECT_NE(std::find(v2.begin(), v2.end(), "single-kind set"), v2.end());

  std::vector<Requirement> blank = ok;
  blank[0].text = " ";
  const auto v3 = ValidateRequirements(blank);
  EXPECT_NE(std::find(v3.begin(), v3.end(), "empty text"), v3.end());
}

TEST(PromptTest, CountChangesKeyList) {
  const std::string five = RenderConstraintPrompt(BuiltinConstraintTemplate(), "Q", 5);
  EXPECT_NE(five.find("c5, t5"), std::string::npos);
  EXPECT_EQ(five.substr(five.size() - 18), "[Seed Question]\nQ\n");
  const std::string three = RenderConstraintPrompt(BuiltinConstraintTemplate(), "Q", 3);
  EXPECT_NE(three.find("c3, t3 representing"), std::string::npos);
  EXPECT_EQ(three.find("c5"), std::string::npos);
  EXPECT_EQ(three.find(" five "), std::string::npos);
}

TEST(PromptTest, BracesInSeedSurvive) {
  const std::string p = RenderConstraintPrompt(BuiltinConstraintTemplate(), "Use {x}", 5);
  EXPECT_NE(p.find("Use {x}"), std::string::npos);
}

}  // namespace
}  // namespace reqdrop
