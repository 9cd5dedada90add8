#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace nl2f;
using nl2f::test::make_example;
using nl2f::test::make_table;

namespace {

std::vector<Example> load(const std::string& text) {
  std::istringstream in(text);
  return load_corpus(in);
}

std::string save(const std::vector<Example>& corpus) {
  std::ostringstream out;
  save_corpus(corpus, out);
  return out.str();
}

std::string error_of(const std::string& text) {
  try {
    load(text);
  } catch (const CorpusError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Corpus, LoadsRecordsInOrder) {
  const std::string text =
      R"j({"id":"a","table":{"headers":["A","B"],"rows":[["1","2"],["3",""]]},"formula":"=[A]+[B]","utterance":"add"})j"
      "\n"
      R"j({"id":"b","table":{"headers":["X"],"rows":[["hi"]]},"formula":"=LEN([X])",)j"
      R"j("verdicts":{"VO":{"accepted":true,"evidence":"2"}}})j"
      "\n";
  auto corpus = load(text);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[0].id, "a");
  EXPECT_EQ(corpus[0].table.find("B")->cells[1], CellValue::blank());
  EXPECT_EQ(corpus[0].utterance, "add");
  EXPECT_EQ(corpus[1].id, "b");
  EXPECT_FALSE(corpus[1].utterance.has_value());
  ASSERT_TRUE(corpus[1].verdicts.count(ValidatorId::VO));
  EXPECT_TRUE(corpus[1].verdicts.at(ValidatorId::VO).accepted);
  EXPECT_EQ(corpus[1].verdicts.at(ValidatorId::VO).evidence, "2");
}

TEST(Corpus, SkipsBlankLines) {
  auto corpus = load("\n" R"j({"id":"a","table":{"headers":["A"],"rows":[["1"]]},"formula":"=1"})j" "\n\n");
  EXPECT_EQ(corpus.size(), 1u);
}

TEST(Corpus, RaggedRowsReportRowCountMismatch) {
  const std::string msg =
      error_of(R"j({"id":"a","table":{"headers":["A","B"],"rows":[["1","2"],["3"]]},"formula":"=1"})j");
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("row count mismatch"), std::string::npos) << msg;
}

TEST(Corpus, ErrorsNameLineAndField) {
  const std::string ok = R"j({"id":"a","table":{"headers":["A"],"rows":[["1"]]},"formula":"=1"})j";
  std::string msg = error_of(ok + "\n" + R"j({"id":"b","table":{"headers":["A"],"rows":[["1"]]}})j");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("formula"), std::string::npos) << msg;

  msg = error_of(R"j({"id":7,"table":{"headers":["A"],"rows":[["1"]]},"formula":"=1"})j");
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'id'"), std::string::npos) << msg;

  msg = error_of("{not json");
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;

  msg = error_of(R"j({"id":"a","table":{"headers":["A"],"rows":[["1"]]},"formula":"=1","verdicts":{"VX":{"accepted":true}}})j");
  EXPECT_NE(msg.find("verdicts"), std::string::npos) << msg;
}

TEST(Corpus, DuplicateIdIsAnError) {
  const std::string rec = R"j({"id":"a","table":{"headers":["A"],"rows":[["1"]]},"formula":"=1"})j";
  const std::string msg = error_of(rec + "\n" + rec + "\n");
  EXPECT_NE(msg.find("duplicate"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(Corpus, SaveEmptyIsEmpty) { EXPECT_EQ(save({}), ""); }

TEST(Corpus, SaveOneIsOneLine) {
  auto ex = make_example("x", make_table({{"A", {"1"}}}), "=[A]");
  const std::string text = save({ex});
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Corpus, StableFieldOrder) {
  auto ex = make_example("x", make_table({{"A", {"1"}}}), "=[A]", "copy A");
  ex.verdicts[ValidatorId::VC] = {false, "No", "label"};
  ex.verdicts[ValidatorId::VO] = {true, "1", ""};
  const std::string line = save({ex});
  EXPECT_LT(line.find("\"id\""), line.find("\"table\""));
  EXPECT_LT(line.find("\"table\""), line.find("\"formula\""));
  EXPECT_LT(line.find("\"formula\""), line.find("\"utterance\""));
  EXPECT_LT(line.find("\"utterance\""), line.find("\"verdicts\""));
  EXPECT_LT(line.find("\"VO\""), line.find("\"VC\""));
}

TEST(Corpus, RoundTripOfFifty) {
  std::vector<Example> corpus;
  for (int i = 0; i < 50; ++i) {
    auto ex = make_example("ex" + std::to_string(i),
                           make_table({{"Num", {std::to_string(i), "0.1", ""}},
                                       {"Txt", {"a \"q\"", "TRUE", "#N/A"}},
                                       {"Uni", {"\xC3\xA9t\xC3\xA9", "x|y", "  pad "}}}),
                           "=[Num]*" + std::to_string(i));
    if (i % 2 == 0) ex.utterance = "multiply by " + std::to_string(i);
    if (i % 3 == 0) ex.gold_formula = "=[Num]";
    if (i % 5 == 0) ex.verdicts[ValidatorId::VP] = {i % 10 == 0, "def derive(t): ...", "runtime error: x"};
    if (i % 7 == 0) ex.provenance["note"] = i;
    corpus.push_back(std::move(ex));
  }
  const std::string first = save(corpus);
  const auto loaded = load(first);
  EXPECT_EQ(loaded, corpus);
  EXPECT_EQ(save(loaded), first);
}

TEST(Corpus, FileRoundTrip) {
  nl2f::test::TempDir dir;
  auto ex = make_example("x", make_table({{"A", {"1", "2"}}}), "=[A]+1", "add one");
  save_corpus(std::vector<Example>{ex}, dir / "c.jsonl");
  EXPECT_EQ(load_corpus(dir / "c.jsonl"), std::vector<Example>{ex});
  EXPECT_THROW(load_corpus(dir / "missing.jsonl"), CorpusError);
}

TEST(Corpus, ValidatorIds) {
  EXPECT_EQ(parse_validator_id("VP"), ValidatorId::VP);
  EXPECT_EQ(parse_validator_id("vc"), ValidatorId::VC);
  EXPECT_FALSE(parse_validator_id("VX"));
  EXPECT_EQ(parse_validator_list("VO,VC"), (std::vector<ValidatorId>{ValidatorId::VO, ValidatorId::VC}));
  EXPECT_TRUE(parse_validator_list("").empty());
  EXPECT_THROW(parse_validator_list("VO,XX"), Error);
}
