#include "nl2f/table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>
#include <system_error>

#include "nl2f/error.hpp"
#include "text_util.hpp"

namespace nl2f {

namespace {

constexpr std::array<std::string_view, 4> kErrorCodes = {
    error_code::kDivZero, error_code::kValue, error_code::kName, error_code::kNotAvailable};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool is_known_error_code(std::string_view text) {
  return std::find(kErrorCodes.begin(), kErrorCodes.end(), text) != kErrorCodes.end();
}

CellValue CellValue::number(double v) {
  if (!std::isfinite(v)) throw Error("non-finite number cell");
  CellValue c;
  c.value_ = v;
  return c;
}

CellValue CellValue::text(std::string s) {
  CellValue c;
  c.value_ = std::move(s);
  return c;
}

CellValue CellValue::boolean(bool b) {
  CellValue c;
  c.value_ = b;
  return c;
}

CellValue CellValue::error(std::string_view code) {
  if (!is_known_error_code(code)) throw Error("unknown error code " + std::string(code));
  CellValue c;
  c.value_ = ErrorCode{std::string(code)};
  return c;
}

const char* kind_name(CellValue::Kind kind) noexcept {
  switch (kind) {
    case CellValue::Kind::Blank: return "blank";
    case CellValue::Kind::Number: return "number";
    case CellValue::Kind::Text: return "text";
    case CellValue::Kind::Boolean: return "boolean";
    case CellValue::Kind::Error: return "error";
  }
  return "?";
}

std::optional<double> parse_number(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
  const std::size_t mantissa_start = i;
  std::size_t digits = 0;
  while (i < n && is_digit(text[i])) ++i, ++digits;
  if (i < n && text[i] == '.') {
    ++i;
    while (i < n && is_digit(text[i])) ++i, ++digits;
  }
  if (digits == 0 || i == mantissa_start) return std::nullopt;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < n && is_digit(text[i])) ++i, ++exp_digits;
    if (exp_digits == 0) return std::nullopt;
  }
  if (i != n) return std::nullopt;

  // from_chars rejects a leading '+'.
  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

CellValue parse_cell(std::string_view text) {
  if (text.empty()) return CellValue::blank();
  if (iequals(text, "TRUE")) return CellValue::boolean(true);
  if (iequals(text, "FALSE")) return CellValue::boolean(false);
  if (auto v = parse_number(text)) return CellValue::number(*v);
  if (text.front() == '#' && is_known_error_code(text)) return CellValue::error(text);
  return CellValue::text(std::string(text));
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "0";
  return std::string(buf.data(), ptr);
}

std::string display_text(const CellValue& cell) {
  switch (cell.kind()) {
    case CellValue::Kind::Blank: return "";
    case CellValue::Kind::Number: return format_number(cell.as_number());
    case CellValue::Kind::Text: return cell.as_text();
    case CellValue::Kind::Boolean: return cell.as_boolean() ? "TRUE" : "FALSE";
    case CellValue::Kind::Error: return cell.error_code();
  }
  return "";
}

std::string debug_string(const CellValue& cell) {
  switch (cell.kind()) {
    case CellValue::Kind::Blank: return "Blank";
    case CellValue::Kind::Text: return "Text(\"" + cell.as_text() + "\")";
    default: return std::string(kind_name(cell.kind())) + "(" + display_text(cell) + ")";
  }
}

Table::Table(std::vector<Column> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw CorpusError("table has no columns");
  row_count_ = columns_.front().cells.size();
  if (row_count_ == 0) throw CorpusError("table has no rows");
  std::set<std::string_view> seen;
  for (const Column& c : columns_) {
    if (c.header.empty()) throw CorpusError("empty column header");
    if (!seen.insert(c.header).second) throw CorpusError("duplicate column header '" + c.header + "'");
    if (c.cells.size() != row_count_) {
      throw CorpusError("row count mismatch: column '" + c.header + "' has " + std::to_string(c.cells.size()) +
                        " cells, expected " + std::to_string(row_count_));
    }
  }
}

Table Table::from_rows(const std::vector<std::string>& headers, const std::vector<std::vector<CellValue>>& rows) {
  std::vector<Column> columns;
  columns.reserve(headers.size());
  for (const auto& h : headers) columns.push_back(Column{h, {}});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != headers.size()) {
      throw CorpusError("row count mismatch: row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                        " cells, expected " + std::to_string(headers.size()));
    }
    for (std::size_t c = 0; c < headers.size(); ++c) columns[c].cells.push_back(rows[r][c]);
  }
  return Table(std::move(columns));
}

const Column* Table::find(std::string_view header) const noexcept {
  for (const Column& c : columns_) {
    if (c.header == header) return &c;
  }
  return nullptr;
}

std::vector<std::string> Table::headers() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const Column& c : columns_) out.push_back(c.header);
  return out;
}

Table Table::head(std::size_t rows) const {
  const std::size_t keep = std::clamp<std::size_t>(rows, 1, row_count_);
  if (keep == row_count_) return *this;
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (const Column& c : columns_) {
    cols.push_back(Column{c.header, std::vector<CellValue>(c.cells.begin(), c.cells.begin() + keep)});
  }
  return Table(std::move(cols));
}

}  // namespace nl2f
