#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "nl2f/formula.hpp"
#include "nl2f/table.hpp"

namespace nl2f::interp {

class RowEvaluator {
 public:
  RowEvaluator(const Table& table, std::size_t row) : table_(table), row_(row) {}
  CellValue eval(const formula::Ast& ast) const;

 private:
  const Table& table_;
  std::size_t row_;
};

// Built-ins receive unevaluated arguments so IF/IFERROR/CHOOSE can be lazy.
struct Builtin {
  std::size_t min_args;
  std::size_t max_args;  // SIZE_MAX for variadic
  std::function<CellValue(std::span<const formula::Ast>, const RowEvaluator&)> fn;
};

const std::map<std::string, Builtin>& builtins();

// Coercions shared by operators and built-ins. On failure `error` holds the
// Error cell to return.
struct Number {
  double value = 0;
  std::optional<CellValue> error;
};
struct Text {
  std::string value;
  std::optional<CellValue> error;
};
struct Logical {
  bool value = false;
  std::optional<CellValue> error;
};

Number to_number(const CellValue& v);
Text to_text(const CellValue& v);
Logical to_logical(const CellValue& v);
// Number cell, or #VALUE! when the result is not finite.
CellValue make_number(double v);
CellValue value_error();

}  // namespace nl2f::interp
