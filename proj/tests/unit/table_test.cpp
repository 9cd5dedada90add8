#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "support.hpp"

using namespace nl2f;
using nl2f::test::make_table;

TEST(ParseCell, TypesLiterals) {
  EXPECT_EQ(parse_cell("3.5"), CellValue::number(3.5));
  EXPECT_EQ(parse_cell("-2"), CellValue::number(-2));
  EXPECT_EQ(parse_cell("1e3"), CellValue::number(1000));
  EXPECT_EQ(parse_cell(""), CellValue::blank());
  EXPECT_EQ(parse_cell("#DIV/0!"), CellValue::error("#DIV/0!"));
  EXPECT_EQ(parse_cell("#N/A"), CellValue::error("#N/A"));
  EXPECT_EQ(parse_cell("TRUE"), CellValue::boolean(true));
  EXPECT_EQ(parse_cell("false"), CellValue::boolean(false));
  EXPECT_EQ(parse_cell("hello"), CellValue::text("hello"));
}

TEST(ParseCell, UnknownHashStringIsText) {
  EXPECT_EQ(parse_cell("#REF!"), CellValue::text("#REF!"));
  EXPECT_EQ(parse_cell("#1"), CellValue::text("#1"));
}

TEST(ParseCell, NonDecimalNumbersStayText) {
  EXPECT_TRUE(parse_cell("1,000").is_text());
  EXPECT_TRUE(parse_cell("nan").is_text());
  EXPECT_TRUE(parse_cell("inf").is_text());
  EXPECT_TRUE(parse_cell("0x10").is_text());
  EXPECT_TRUE(parse_cell(" 3").is_text());
}

TEST(ParseCell, Deterministic) {
  for (const char* s : {"1", "", "x", "TRUE", "#VALUE!", "2.50"}) EXPECT_EQ(parse_cell(s), parse_cell(s));
}

TEST(CellValue, BlankAndEmptyTextDiffer) {
  EXPECT_NE(CellValue::blank(), CellValue::text(""));
  EXPECT_TRUE(CellValue::text("").is_text());
}

TEST(CellValue, RejectsNonFiniteNumbers) {
  EXPECT_THROW(CellValue::number(std::numeric_limits<double>::infinity()), Error);
  EXPECT_THROW(CellValue::number(std::nan("")), Error);
}

TEST(CellValue, RejectsUnknownErrorCode) { EXPECT_THROW(CellValue::error("#OOPS"), Error); }

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(4), "4");
  EXPECT_EQ(format_number(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(format_number(-2.5), "-2.5");
  EXPECT_EQ(format_number(1e21), "1e+21");
  for (double v : {0.1, 1.0 / 3.0, 123456.789, -1e-7}) {
    EXPECT_EQ(parse_cell(format_number(v)).as_number(), v);
  }
}

TEST(DisplayText, Kinds) {
  EXPECT_EQ(display_text(CellValue::blank()), "");
  EXPECT_EQ(display_text(CellValue::boolean(true)), "TRUE");
  EXPECT_EQ(display_text(CellValue::number(3)), "3");
  EXPECT_EQ(display_text(CellValue::error("#N/A")), "#N/A");
}

TEST(Table, EnforcesInvariants) {
  EXPECT_THROW(Table({}), CorpusError);
  EXPECT_THROW(make_table({{"A", {"1"}}, {"A", {"2"}}}), CorpusError);
  EXPECT_THROW(make_table({{"", {"1"}}}), CorpusError);
  EXPECT_THROW(make_table({{"A", {}}}), CorpusError);
  try {
    make_table({{"A", {"1", "2", "3"}}, {"B", {"1", "2", "3", "4"}}});
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("row count mismatch"), std::string::npos);
  }
}

TEST(Table, LookupAndHead) {
  Table t = make_table({{"A", {"1", "2", "3"}}, {"B", {"x", "y", "z"}}});
  EXPECT_EQ(t.row_count(), 3u);
  EXPECT_EQ(t.headers(), (std::vector<std::string>{"A", "B"}));
  ASSERT_NE(t.find("B"), nullptr);
  EXPECT_EQ(t.find("B")->cells[1], CellValue::text("y"));
  EXPECT_EQ(t.find("C"), nullptr);
  EXPECT_EQ(t.head(2).row_count(), 2u);
  EXPECT_EQ(t.head(10), t);
  EXPECT_EQ(t.head(0).row_count(), 1u);
}

TEST(Table, FromRows) {
  Table t = Table::from_rows({"A", "B"}, {{CellValue::number(1), CellValue::text("a")},
                                          {CellValue::number(2), CellValue::blank()}});
  EXPECT_EQ(t, make_table({{"A", {"1", "2"}}, {"B", {"a", ""}}}));
  EXPECT_THROW(Table::from_rows({"A", "B"}, {{CellValue::number(1)}}), CorpusError);
}
