#pragma once

#include <string>
#include <vector>

#include "pipeline_fixture.hpp"

namespace nl2f::test {

struct OracleFamily {
  int table;
  std::string formula;
  std::string faithful;
  std::string corrupted;
  std::string described;  // what the corrupted utterance asks for
  std::string program;
  std::string corrupted_program;
};

// Thirty examples: each family yields one faithful annotation (id f<i>) and
// one corrupted annotation (id c<i>) of the same formula.
inline std::vector<DemoEntry> validator_oracle_entries() {
  static const std::vector<OracleFamily> families = {
      {0, "=[Units]*[Price]", "Units times price", "Units plus price", "=[Units]+[Price]",
       "return [u * p for u, p in zip(t['Units'], t['Price'])]", "return [u + p for u, p in zip(t['Units'], t['Price'])]"},
      {0, "=[Units]*2", "Double the units", "Half the units", "=[Units]/2", "return [u * 2 for u in t['Units']]",
       "return [u / 2 for u in t['Units']]"},
      {0, "=IF([Units]>10,\"bulk\",\"single\")", "bulk when more than 10 units, else single",
       "bulk when fewer than 10 units, else single", "=IF([Units]<10,\"bulk\",\"single\")",
       "return ['bulk' if u > 10 else 'single' for u in t['Units']]",
       "return ['bulk' if u < 10 else 'single' for u in t['Units']]"},
      {0, "=UPPER([Region])", "Region in capitals", "First letter of the region", "=LEFT([Region],1)",
       "return [r.upper() for r in t['Region']]", "return [r[0] for r in t['Region']]"},
      {0, "=ROUND([Price],0)", "Price rounded to a whole number", "Price times ten", "=[Price]*10",
       "return [int(p + 0.5) for p in t['Price']]", "return [p * 10 for p in t['Price']]"},
      {0, "=LEN([Region])", "Number of letters in the region name", "Number of units", "=[Units]",
       "return [len(r) for r in t['Region']]", "return list(t['Units'])"},
      {1, "=CONCATENATE([First],\" \",[Last])", "Full name", "Last name, comma, first name",
       "=CONCATENATE([Last],\", \",[First])", "return [f + ' ' + l for f, l in zip(t['First'], t['Last'])]",
       "return [l + ', ' + f for f, l in zip(t['First'], t['Last'])]"},
      {1, "=[Age]+1", "Age next year", "Age last year", "=[Age]-1", "return [a + 1 for a in t['Age']]",
       "return [a - 1 for a in t['Age']]"},
      {1, "=IF([Age]>=65,\"retired\",\"working\")", "retired from 65 on, otherwise working",
       "retired below 65, otherwise working", "=IF([Age]<65,\"retired\",\"working\")",
       "return ['retired' if a >= 65 else 'working' for a in t['Age']]",
       "return ['retired' if a < 65 else 'working' for a in t['Age']]"},
      {1, "=LEFT([First],1)&LEFT([Last],1)", "Initials", "Initial of the last name", "=LEFT([Last],1)",
       "return [f[0] + l[0] for f, l in zip(t['First'], t['Last'])]", "return [l[0] for l in t['Last']]"},
      {1, "=[Age]*12", "Age in months", "Age in weeks", "=[Age]*52", "return [a * 12 for a in t['Age']]",
       "return [a * 52 for a in t['Age']]"},
      {2, "=([Score1]+[Score2])/2", "Mean of the two scores", "Sum of the two scores", "=[Score1]+[Score2]",
       "return [(a + b) / 2 for a, b in zip(t['Score1'], t['Score2'])]",
       "return [a + b for a, b in zip(t['Score1'], t['Score2'])]"},
      {2, "=MAX([Score1],[Score2])", "Better of the two scores", "Worse of the two scores", "=MIN([Score1],[Score2])",
       "return [max(a, b) for a, b in zip(t['Score1'], t['Score2'])]",
       "return [min(a, b) for a, b in zip(t['Score1'], t['Score2'])]"},
      {2, "=[Score2]-[Score1]", "Gain from the first score to the second", "Loss from the first score to the second",
       "=[Score1]-[Score2]", "return [b - a for a, b in zip(t['Score1'], t['Score2'])]",
       "return [a - b for a, b in zip(t['Score1'], t['Score2'])]"},
      {2, "=IF([Score2]>[Score1],\"up\",\"down\")", "up when the second score is higher, else down",
       "up when the second score is lower, else down", "=IF([Score2]<[Score1],\"up\",\"down\")",
       "return ['up' if b > a else 'down' for a, b in zip(t['Score1'], t['Score2'])]",
       "return ['up' if b < a else 'down' for a, b in zip(t['Score1'], t['Score2'])]"},
  };
  // VC labels deliberately disagree with the ground truth in a few places.
  static const std::vector<std::string> faithful_labels = {"Yes", "Yes", "No, the label is wrong", "Yes", "Yes",
                                                           "Yes", "Yes", "Yes", "no", "Yes",
                                                           "Yes", "Yes", "Yes", "Yes", "Yes"};
  static const std::vector<std::string> corrupted_labels = {"No", "No", "No", "No", "Yes",
                                                            "No", "No", "No", "No", "No",
                                                            "Correct.", "No", "No", "maybe", "No"};
  std::vector<DemoEntry> out;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& f = families[i];
    out.push_back({"f" + std::to_string(i), f.table, f.formula, f.faithful, f.formula, faithful_labels[i], f.program});
    out.push_back(
        {"c" + std::to_string(i), f.table, f.formula, f.corrupted, f.described, corrupted_labels[i], f.corrupted_program});
  }
  return out;
}

inline std::vector<Example> validator_oracle_corpus() {
  const auto tables = demo_tables();
  std::vector<Example> out;
  for (const auto& e : validator_oracle_entries()) out.push_back(make_example(e.id, tables[e.table], e.formula, e.utterance));
  return out;
}

inline nlohmann::ordered_json validator_oracle_script() {
  nlohmann::ordered_json script = nlohmann::ordered_json::object();
  add_validator_script(script, validator_oracle_entries(), demo_tables());
  return script;
}

}  // namespace nl2f::test
