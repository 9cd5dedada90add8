#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nl2f {

// Spreadsheet error codes understood by parse_cell and produced by the
// interpreter. Spelling is part of the file format.
namespace error_code {
inline constexpr std::string_view kDivZero = "#DIV/0!";
inline constexpr std::string_view kValue = "#VALUE!";
inline constexpr std::string_view kName = "#NAME?";
inline constexpr std::string_view kNotAvailable = "#N/A";
}  // namespace error_code

bool is_known_error_code(std::string_view text);

// A single typed cell. Numbers are always finite.
class CellValue {
 public:
  enum class Kind { Blank, Number, Text, Boolean, Error };

  CellValue() = default;  // Blank

  static CellValue blank() { return {}; }
  // Throws std::invalid_argument for NaN or infinities.
  static CellValue number(double v);
  static CellValue text(std::string s);
  static CellValue boolean(bool b);
  static CellValue error(std::string_view code);

  Kind kind() const noexcept { return static_cast<Kind>(value_.index()); }
  bool is_blank() const noexcept { return kind() == Kind::Blank; }
  bool is_number() const noexcept { return kind() == Kind::Number; }
  bool is_text() const noexcept { return kind() == Kind::Text; }
  bool is_boolean() const noexcept { return kind() == Kind::Boolean; }
  bool is_error() const noexcept { return kind() == Kind::Error; }

  double as_number() const { return std::get<double>(value_); }
  const std::string& as_text() const { return std::get<std::string>(value_); }
  bool as_boolean() const { return std::get<bool>(value_); }
  const std::string& error_code() const { return std::get<ErrorCode>(value_).code; }

  friend bool operator==(const CellValue&, const CellValue&) = default;

 private:
  struct ErrorCode {
    std::string code;
    friend bool operator==(const ErrorCode&, const ErrorCode&) = default;
  };
  // Alternative order must match Kind.
  std::variant<std::monostate, double, std::string, bool, ErrorCode> value_;
};

const char* kind_name(CellValue::Kind kind) noexcept;

// Total, deterministic typing of a raw cell string.
CellValue parse_cell(std::string_view text);

// Parses a plain decimal literal (optional sign, digits, fraction, exponent).
// Returns nullopt for anything else, including inf/nan spellings.
std::optional<double> parse_number(std::string_view text);

// Shortest decimal string that reads back to the same double.
std::string format_number(double v);

// Text a cell shows when coerced into a string context. Blank is "", Boolean
// is TRUE/FALSE, Error is its code. parse_cell(display_text(c)) == c for every
// cell parse_cell can produce.
std::string display_text(const CellValue& cell);

std::string debug_string(const CellValue& cell);

struct Column {
  std::string header;
  std::vector<CellValue> cells;

  friend bool operator==(const Column&, const Column&) = default;
};

// Ordered, non-empty set of equally long, uniquely named columns.
class Table {
 public:
  // Throws CorpusError when any invariant is violated.
  explicit Table(std::vector<Column> columns);

  // Builds a table from a header list and row-major raw cell strings.
  static Table from_rows(const std::vector<std::string>& headers,
                         const std::vector<std::vector<CellValue>>& rows);

  const std::vector<Column>& columns() const noexcept { return columns_; }
  std::size_t column_count() const noexcept { return columns_.size(); }
  std::size_t row_count() const noexcept { return row_count_; }

  const Column* find(std::string_view header) const noexcept;
  bool has_column(std::string_view header) const noexcept { return find(header) != nullptr; }
  std::vector<std::string> headers() const;

  // Copy of the first `rows` rows (rows is clamped to [1, row_count]).
  Table head(std::size_t rows) const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
};

}  // namespace nl2f
