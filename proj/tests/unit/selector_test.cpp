#include <gtest/gtest.h>

#include "filter_fixtures.hpp"
#include "support.hpp"

using namespace nl2f;
using namespace nl2f::dataset;

namespace {

std::vector<Example> corpus(const std::vector<std::string>& sigs) {
  const Table t = nl2f::test::make_table({{"A", {"1"}}});
  std::vector<Example> out;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    Example ex = nl2f::test::make_example("s" + std::to_string(i), t, "=[A]");
    nl2f::test::set_signature(ex, sigs[i]);
    out.push_back(std::move(ex));
  }
  return out;
}

std::set<std::string> ids(const std::vector<Example>& xs) {
  std::set<std::string> out;
  for (const auto& x : xs) out.insert(x.id);
  return out;
}

}  // namespace

TEST(Selector, SpecCorpus) {
  const auto c = corpus({"111", "110", "000", "001"});
  EXPECT_EQ(ids(select_subset(c, Selector::accepted(ValidatorId::VO))), (std::set<std::string>{"s0", "s1"}));
  EXPECT_EQ(ids(select_subset(c, Selector::rejected(ValidatorId::VO))), (std::set<std::string>{"s2", "s3"}));
  EXPECT_EQ(ids(select_subset(c, Selector::intersection())), (std::set<std::string>{"s0"}));
  EXPECT_EQ(select_subset(c, Selector::raw()), c);
}

TEST(Selector, Grammar) {
  const auto c = corpus({"111", "110", "000", "001", "011"});
  EXPECT_EQ(ids(select_subset(c, Selector::parse("accepted(VP)&accepted(VC)"))), (std::set<std::string>{"s0", "s4"}));
  EXPECT_EQ(ids(select_subset(c, Selector::parse(" accepted(VO) | rejected( VP ) "))),
            (std::set<std::string>{"s0", "s1", "s2", "s3"}));
  EXPECT_EQ(ids(select_subset(c, Selector::parse("(accepted(VO)|accepted(VC))&rejected(VP)"))),
            (std::set<std::string>{"s3"}));
  EXPECT_EQ(ids(select_subset(c, Selector::parse("intersection"))), (std::set<std::string>{"s0"}));
  EXPECT_EQ(Selector::parse("accepted(VO)&raw").referenced_validators(), (std::set<ValidatorId>{ValidatorId::VO}));
  EXPECT_EQ(Selector::intersection().referenced_validators().size(), 3u);
}

TEST(Selector, SyntaxErrors) {
  for (const char* bad : {"", "accepted(VX)", "accepted(VO", "accepted(VO)&", "raw raw", "(raw", "bogus"}) {
    EXPECT_THROW(Selector::parse(bad), ConfigError) << bad;
  }
}

TEST(Selector, MissingVerdictsError) {
  const auto c = corpus({"1?1", "0?0"});
  EXPECT_THROW(select_subset(c, Selector::accepted(ValidatorId::VP)), Error);
  EXPECT_NO_THROW(select_subset(c, Selector::accepted(ValidatorId::VO)));
}

TEST(Selector, AcceptedAndRejectedPartitionKnownVerdicts) {
  std::vector<std::string> sigs;
  const char states[] = {'0', '1', '?'};
  for (char a : states)
    for (char b : states)
      for (char c : states) sigs.push_back(std::string{a, b, c});
  const auto c = corpus(sigs);
  for (ValidatorId v : {ValidatorId::VO, ValidatorId::VP, ValidatorId::VC}) {
    const auto acc = ids(select_subset(c, Selector::accepted(v)));
    const auto rej = ids(select_subset(c, Selector::rejected(v)));
    std::set<std::string> known;
    for (const auto& ex : c)
      if (ex.verdicts.count(v)) known.insert(ex.id);
    std::set<std::string> both;
    std::set_intersection(acc.begin(), acc.end(), rej.begin(), rej.end(), std::inserter(both, both.end()));
    EXPECT_TRUE(both.empty());
    std::set<std::string> all = acc;
    all.insert(rej.begin(), rej.end());
    EXPECT_EQ(all, known);
  }
  const auto p = overlap_partition(c);
  EXPECT_EQ(select_subset(c, Selector::intersection()).size(), p.all_pass());
}
