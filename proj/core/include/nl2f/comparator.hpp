#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nl2f/table.hpp"

namespace nl2f {

enum class StringMetric {
  ContiguousSubstring,  // longest common substring (default)
  Subsequence,          // longest common subsequence, for ablations
};

struct MatchOptions {
  double numeric_tolerance = 0.05;  // inclusive, absolute
  double string_coefficient = 0.8;  // strict lower bound
  bool strict_strings = false;      // when false, compare trimmed lowercase text
  StringMetric metric = StringMetric::ContiguousSubstring;
};

struct CellMatch {
  bool matched = false;
  std::string reason;
};

struct RowResult {
  std::size_t row = 0;
  bool matched = false;
  std::string reason;

  friend bool operator==(const RowResult&, const RowResult&) = default;
};

struct ComparisonReport {
  bool matched = false;
  std::vector<RowResult> row_results;
  std::size_t rows_compared = 0;
  std::string reason;  // set on length mismatch

  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

// |longest common substring| / max(|a|, |b|), over Unicode code points.
double substring_coefficient(std::string_view a, std::string_view b);
// Same ratio with the longest common (not necessarily contiguous) subsequence.
double subsequence_coefficient(std::string_view a, std::string_view b);

CellMatch cells_match(const CellValue& expected, const CellValue& actual, const MatchOptions& options = {});

ComparisonReport columns_match(const Column& expected, const Column& actual, const MatchOptions& options = {});

}  // namespace nl2f
