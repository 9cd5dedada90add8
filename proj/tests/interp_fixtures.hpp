#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "support.hpp"

namespace nl2f::test {

// Hand-computed (formula, table, expected column) cases.
struct InterpFixture {
  std::string formula;
  char table;  // 'N' numeric table, 'T' text table
  std::vector<CellValue> expected;
};

inline Table numeric_table() {
  return make_table({{"A", {"4", "-2.5", "0"}}, {"B", {"2", "0", ""}}, {"C", {"10", "3", "7"}}});
}

inline Table text_table() {
  return make_table({{"F", {"john", "MARY ann", "  x  y "}},
                     {"L", {"Smith", "O'Neil", "z"}},
                     {"N", {"12", "abc", "3.5"}}});
}

inline std::vector<InterpFixture> interp_fixtures() {
  const auto N = [](double v) { return CellValue::number(v); };
  const auto S = [](const char* s) { return CellValue::text(s); };
  const auto B = [](bool b) { return CellValue::boolean(b); };
  const auto E = [](const char* code) { return CellValue::error(code); };
  const CellValue div0 = E("#DIV/0!");
  const CellValue value = E("#VALUE!");
  const CellValue name = E("#NAME?");
  const CellValue T = B(true);
  const CellValue F = B(false);
  return {
      // arithmetic and Blank-as-zero
      {"=[A]+[C]", 'N', {N(14), N(0.5), N(7)}},
      {"=[A]-[C]", 'N', {N(-6), N(-5.5), N(-7)}},
      {"=[A]*[B]", 'N', {N(8), N(0), N(0)}},
      {"=[A]/[B]", 'N', {N(2), div0, div0}},
      {"=-[A]", 'N', {N(-4), N(2.5), N(0)}},
      {"=[A]+\"2\"", 'N', {N(6), N(-0.5), N(2)}},
      {"=[A]+\"x\"", 'N', {value, value, value}},
      {"=([A]+[C])/2", 'N', {N(7), N(0.25), N(3.5)}},
      // aggregates
      {"=SUM([A],[B],[C])", 'N', {N(16), N(0.5), N(7)}},
      {"=SUM([A],[B])", 'N', {N(6), N(-2.5), N(0)}},
      {"=SUM([B])", 'N', {N(2), N(0), N(0)}},
      {"=AVERAGE([A],[B])", 'N', {N(3), N(-1.25), N(0)}},
      {"=AVERAGE([B])", 'N', {N(2), N(0), div0}},
      {"=MIN([A],[B],[C])", 'N', {N(2), N(-2.5), N(0)}},
      {"=MAX([A],[B],[C])", 'N', {N(10), N(3), N(7)}},
      {"=MAX([B])", 'N', {N(2), N(0), N(0)}},
      {"=PRODUCT([A],[C])", 'N', {N(40), N(-7.5), N(0)}},
      {"=COUNT([A],[B],\"x\")", 'N', {N(2), N(2), N(1)}},
      {"=COUNTA([A],[B])", 'N', {N(2), N(2), N(1)}},
      // math
      {"=ABS([A])", 'N', {N(4), N(2.5), N(0)}},
      {"=ROUND([A]/3,2)", 'N', {N(1.33), N(-0.83), N(0)}},
      {"=ROUND([A],0)", 'N', {N(4), N(-3), N(0)}},
      {"=ROUND(2.675,2)", 'N', {N(2.68), N(2.68), N(2.68)}},
      {"=ROUND(1234.5,-2)", 'N', {N(1200), N(1200), N(1200)}},
      {"=ROUNDUP([A]/3,1)", 'N', {N(1.4), N(-0.9), N(0)}},
      {"=ROUNDDOWN([C]/3,1)", 'N', {N(3.3), N(1), N(2.3)}},
      {"=INT([A])", 'N', {N(4), N(-3), N(0)}},
      {"=MOD([C],3)", 'N', {N(1), N(0), N(1)}},
      {"=MOD([A],[B])", 'N', {N(0), div0, div0}},
      {"=POWER([C],2)", 'N', {N(100), N(9), N(49)}},
      {"=SQRT([C]-5)", 'N', {N(std::sqrt(5.0)), value, N(std::sqrt(2.0))}},
      {"=SIGN([A])", 'N', {N(1), N(-1), N(0)}},
      // IF, laziness and IFERROR
      {"=IF([A]>0,\"pos\",\"neg\")", 'N', {S("pos"), S("neg"), S("neg")}},
      {"=IF([A]>0,1)", 'N', {N(1), F, F}},
      {"=IF([B]=0,\"zero\",[A]/[B])", 'N', {N(2), S("zero"), S("zero")}},
      {"=IF([A]>0,[A],1/0)", 'N', {N(4), div0, div0}},
      {"=IF([A]<=0,FOOBAR(),[A])", 'N', {N(4), name, name}},
      {"=IF(1/0,1,2)", 'N', {div0, div0, div0}},
      {"=IFERROR([A]/[B],0)", 'N', {N(2), N(0), N(0)}},
      {"=IFERROR(FOOBAR(1),\"n/a\")", 'N', {S("n/a"), S("n/a"), S("n/a")}},
      {"=IFERROR([A],1/0)", 'N', {N(4), N(-2.5), N(0)}},
      {"=IFNA(NA(),5)", 'N', {N(5), N(5), N(5)}},
      {"=IFNA(1/0,5)", 'N', {div0, div0, div0}},
      {"=CHOOSE(2,\"a\",\"b\",\"c\")", 'N', {S("b"), S("b"), S("b")}},
      // logic and comparison
      {"=AND([A]>0,[C]>0)", 'N', {T, F, F}},
      {"=OR([A]>0,[B]>0)", 'N', {T, F, F}},
      {"=NOT([A]>0)", 'N', {F, T, T}},
      {"=AND([A]>0,1/0)", 'N', {div0, div0, div0}},
      {"=OR([B],[B])", 'N', {T, F, value}},
      {"=[A]>[B]", 'N', {T, F, F}},
      {"=[A]=[C]-[C]", 'N', {F, F, T}},
      {"=[A]>\"a\"", 'N', {value, value, value}},
      {"=[A]=\"a\"", 'N', {F, F, F}},
      {"=[A]<>\"a\"", 'N', {T, T, T}},
      {"=ISBLANK([B])", 'N', {F, F, T}},
      {"=ISNA(NA())", 'N', {T, T, T}},
      {"=ISERROR([A]/[B])", 'N', {F, T, T}},
      // errors
      {"=FOOBAR([A])", 'N', {name, name, name}},
      {"=ABS()", 'N', {value, value, value}},
      {"=(1/0)+FOOBAR()", 'N', {div0, div0, div0}},
      {"=FOOBAR()+(1/0)", 'N', {name, name, name}},
      {"=#N/A&\"x\"", 'N', {E("#N/A"), E("#N/A"), E("#N/A")}},
      // text
      {"=[A]&\"-\"&[C]", 'N', {S("4-10"), S("-2.5-3"), S("0-7")}},
      {"=CONCATENATE([A],\" / \",[B])", 'N', {S("4 / 2"), S("-2.5 / 0"), S("0 / ")}},
      {"=UPPER([F])", 'T', {S("JOHN"), S("MARY ANN"), S("  X  Y ")}},
      {"=LOWER([F])", 'T', {S("john"), S("mary ann"), S("  x  y ")}},
      {"=TRIM([F])", 'T', {S("john"), S("MARY ann"), S("x y")}},
      {"=LEN([F])", 'T', {N(4), N(8), N(7)}},
      {"=LEFT([L],2)", 'T', {S("Sm"), S("O'"), S("z")}},
      {"=LEFT([L])", 'T', {S("S"), S("O"), S("z")}},
      {"=LEFT([F],-1)", 'T', {value, value, value}},
      {"=RIGHT([L],3)", 'T', {S("ith"), S("eil"), S("z")}},
      {"=MID([L],2,3)", 'T', {S("mit"), S("'Ne"), S("")}},
      {"=PROPER([F])", 'T', {S("John"), S("Mary Ann"), S("  X  Y ")}},
      {"=CONCATENATE(LEFT([F],1),\". \",[L])", 'T', {S("j. Smith"), S("M. O'Neil"), S(" . z")}},
      {"=[F]&TRUE", 'T', {S("johnTRUE"), S("MARY annTRUE"), S("  x  y TRUE")}},
      {"=[N]*2", 'T', {N(24), value, N(7)}},
      {"=VALUE([N])", 'T', {N(12), value, N(3.5)}},
      {"=IFERROR(VALUE([N]),-1)", 'T', {N(12), N(-1), N(3.5)}},
      {"=SUM([N])", 'T', {N(12), value, N(3.5)}},
      {"=LEN(\"caf\xC3\xA9\")", 'T', {N(4), N(4), N(4)}},
      {"=SEARCH(\"N\",[L])", 'T', {value, N(3), value}},
      {"=FIND(\"i\",[L])", 'T', {N(3), N(5), value}},
      {"=SUBSTITUTE([F],\" \",\"_\")", 'T', {S("john"), S("MARY_ann"), S("__x__y_")}},
      {"=EXACT([F],LOWER([F]))", 'T', {T, F, T}},
      {"=REPT([L],2)", 'T', {S("SmithSmith"), S("O'NeilO'Neil"), S("zz")}},
      {"=[F]=\"JOHN\"", 'T', {T, F, F}},
      {"=ISTEXT([N])", 'T', {F, T, F}},
      {"=ISNUMBER([N])", 'T', {T, F, T}},
  };
}

}  // namespace nl2f::test
