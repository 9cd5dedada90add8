#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"

namespace nl2f::test {

// Twelve examples: seven survive, then 2 deprecated, 2 all-empty, 1 unparseable.
inline std::vector<Example> filter_corpus_fixture() {
  const Table nums = make_table({{"A", {"1", "2"}}, {"B", {"3", "0"}}});
  const Table names = make_table({{"F", {"ann", "bob"}}, {"L", {"Lee", "Ray"}}});
  return {
      make_example("k1", nums, "=[A]+[B]"),
      make_example("k2", names, "=CONCATENATE([F],\" \",[L])"),
      make_example("k3", nums, "=IF([A]>1,\"big\",\"\")"),
      make_example("k4", names, "=UPPER([F])"),
      make_example("k5", nums, "=ROUND([A]*1.5,0)"),
      make_example("k6", nums, "=IFERROR([A]/[B],0)"),
      make_example("k7", nums, "=SUMIF([A],\">1\")"),
      make_example("d1", nums, "=FLOOR([A],1)"),
      make_example("d2", nums, "=STDEV([A],[B])"),
      make_example("e1", nums, "=IF([A]>99,1,\"\")"),
      make_example("e2", nums, "=[A]/0"),
      make_example("u1", nums, "=SUM([A],"),
  };
}

inline const std::set<std::string>& filter_kept_ids() {
  static const std::set<std::string> ids = {"k1", "k2", "k3", "k4", "k5", "k6", "k7"};
  return ids;
}

inline const std::map<std::string, std::size_t>& filter_drop_counts() {
  static const std::map<std::string, std::size_t> counts = {
      {"deprecated-function", 2}, {"all-empty-output", 2}, {"unparseable", 1}};
  return counts;
}

// Sets VO, VP, VC verdicts from a signature such as "101".
inline void set_signature(Example& ex, const std::string& sig) {
  const ValidatorId ids[] = {ValidatorId::VO, ValidatorId::VP, ValidatorId::VC};
  for (int i = 0; i < 3; ++i) {
    if (sig[i] == '?') continue;
    ex.verdicts[ids[i]] = VerdictRecord{sig[i] == '1', "", sig[i] == '1' ? "ok" : "no"};
  }
}

}  // namespace nl2f::test
