#include "nl2f/comparator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "text_util.hpp"
#include "utf8.hpp"

namespace nl2f {

namespace {

std::size_t longest_common_substring(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

std::size_t longest_common_subsequence(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <class F>
double ratio(std::string_view a, std::string_view b, F common) {
  const auto x = utf8::decode(a);
  const auto y = utf8::decode(b);
  if (x.empty() && y.empty()) return 1.0;
  if (x.empty() || y.empty()) return 0.0;
  return static_cast<double>(common(x, y)) / static_cast<double>(std::max(x.size(), y.size()));
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

CellMatch numbers_match(double a, double b, const MatchOptions& o) {
  const double diff = std::abs(a - b);
  // Absorbs representation error of the operands (|1.05 - 1.00| is
  // 0.050000000000000044 in binary); far below any meaningful difference.
  const double slack = 4 * std::numeric_limits<double>::epsilon() * std::max({std::abs(a), std::abs(b), 1.0});
  if (diff <= o.numeric_tolerance + slack) return {true, "numeric |diff|=" + fmt(diff)};
  return {false, "numeric |diff|=" + fmt(diff) + " > " + fmt(o.numeric_tolerance)};
}

CellMatch texts_match(const std::string& a, const std::string& b, const MatchOptions& o) {
  std::string x = a, y = b;
  if (!o.strict_strings) {
    x = to_lower(trim(a));
    y = to_lower(trim(b));
  }
  const double coef =
      o.metric == StringMetric::Subsequence ? subsequence_coefficient(x, y) : substring_coefficient(x, y);
  if (coef > o.string_coefficient) return {true, "text coefficient " + fmt(coef)};
  return {false, "text coefficient " + fmt(coef) + " <= " + fmt(o.string_coefficient)};
}

// `a.kind() <= b.kind()` is established by the caller.
CellMatch ordered_match(const CellValue& a, const CellValue& b, const MatchOptions& o) {
  using K = CellValue::Kind;
  if (a.kind() == b.kind()) {
    switch (a.kind()) {
      case K::Blank: return {true, "both blank"};
      case K::Number: return numbers_match(a.as_number(), b.as_number(), o);
      case K::Text: return texts_match(a.as_text(), b.as_text(), o);
      case K::Boolean:
        if (a.as_boolean() == b.as_boolean()) return {true, "boolean equal"};
        return {false, "boolean differs"};
      case K::Error: return {true, "both errors"};
    }
  }
  if (a.kind() == K::Blank && b.kind() == K::Text && trim(b.as_text()).empty()) {
    return {true, "blank matches empty text"};
  }
  if (a.kind() == K::Number && b.kind() == K::Text) {
    if (auto n = parse_number(trim(b.as_text()))) return numbers_match(a.as_number(), *n, o);
  }
  return {false, std::string("kind mismatch: ") + kind_name(a.kind()) + " vs " + kind_name(b.kind())};
}

}  // namespace

double substring_coefficient(std::string_view a, std::string_view b) { return ratio(a, b, longest_common_substring); }

double subsequence_coefficient(std::string_view a, std::string_view b) {
  return ratio(a, b, longest_common_subsequence);
}

CellMatch cells_match(const CellValue& expected, const CellValue& actual, const MatchOptions& options) {
  if (static_cast<int>(expected.kind()) <= static_cast<int>(actual.kind())) {
    return ordered_match(expected, actual, options);
  }
  return ordered_match(actual, expected, options);
}

ComparisonReport columns_match(const Column& expected, const Column& actual, const MatchOptions& options) {
  ComparisonReport report;
  if (expected.cells.size() != actual.cells.size()) {
    report.matched = false;
    report.reason = "length mismatch: expected " + std::to_string(expected.cells.size()) + " rows, got " +
                    std::to_string(actual.cells.size());
    return report;
  }
  report.rows_compared = expected.cells.size();
  report.matched = true;
  for (std::size_t r = 0; r < expected.cells.size(); ++r) {
    CellMatch m = cells_match(expected.cells[r], actual.cells[r], options);
    report.matched = report.matched && m.matched;
    report.row_results.push_back(RowResult{r, m.matched, std::move(m.reason)});
  }
  if (!report.matched) {
    std::size_t bad = 0;
    for (const RowResult& rr : report.row_results) bad += rr.matched ? 0 : 1;
    report.reason = std::to_string(bad) + " of " + std::to_string(report.rows_compared) + " rows differ";
  }
  return report;
}

}  // namespace nl2f
