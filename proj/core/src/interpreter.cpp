#include "nl2f/interpreter.hpp"

#include <cmath>
#include <stdexcept>

#include "interp_internal.hpp"
#include "nl2f/error.hpp"
#include "text_util.hpp"

namespace nl2f {

namespace interp {

CellValue value_error() { return CellValue::error(error_code::kValue); }

CellValue make_number(double v) { return std::isfinite(v) ? CellValue::number(v) : value_error(); }

Number to_number(const CellValue& v) {
  switch (v.kind()) {
    case CellValue::Kind::Number: return {v.as_number(), {}};
    case CellValue::Kind::Blank: return {0.0, {}};
    case CellValue::Kind::Boolean: return {v.as_boolean() ? 1.0 : 0.0, {}};
    case CellValue::Kind::Text:
      if (auto n = parse_number(trim(v.as_text()))) return {*n, {}};
      return {0.0, value_error()};
    case CellValue::Kind::Error: return {0.0, v};
  }
  return {0.0, value_error()};
}

Text to_text(const CellValue& v) {
  if (v.is_error()) return {{}, v};
  return {display_text(v), {}};
}

Logical to_logical(const CellValue& v) {
  switch (v.kind()) {
    case CellValue::Kind::Boolean: return {v.as_boolean(), {}};
    case CellValue::Kind::Number: return {v.as_number() != 0.0, {}};
    case CellValue::Kind::Blank: return {false, {}};
    case CellValue::Kind::Text:
      if (iequals(v.as_text(), "TRUE")) return {true, {}};
      if (iequals(v.as_text(), "FALSE")) return {false, {}};
      return {false, value_error()};
    case CellValue::Kind::Error: return {false, v};
  }
  return {false, value_error()};
}

namespace {

using formula::BinaryOperator;

// Stand-in for Blank when compared against a typed value.
CellValue zero_like(const CellValue& other) {
  switch (other.kind()) {
    case CellValue::Kind::Number: return CellValue::number(0);
    case CellValue::Kind::Text: return CellValue::text("");
    case CellValue::Kind::Boolean: return CellValue::boolean(false);
    default: return CellValue::blank();
  }
}

// -1, 0, 1 for same-kind values.
int three_way(const CellValue& a, const CellValue& b) {
  switch (a.kind()) {
    case CellValue::Kind::Number: return a.as_number() < b.as_number() ? -1 : (a.as_number() > b.as_number() ? 1 : 0);
    case CellValue::Kind::Text: {
      const std::string x = to_lower(a.as_text());
      const std::string y = to_lower(b.as_text());
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case CellValue::Kind::Boolean: return static_cast<int>(a.as_boolean()) - static_cast<int>(b.as_boolean());
    default: return 0;
  }
}

CellValue compare(BinaryOperator op, CellValue a, CellValue b) {
  if (a.is_blank() && !b.is_blank()) a = zero_like(b);
  if (b.is_blank() && !a.is_blank()) b = zero_like(a);
  if (a.kind() != b.kind()) {
    if (op == BinaryOperator::Equal) return CellValue::boolean(false);
    if (op == BinaryOperator::NotEqual) return CellValue::boolean(true);
    return value_error();
  }
  const int c = three_way(a, b);
  switch (op) {
    case BinaryOperator::Equal: return CellValue::boolean(c == 0);
    case BinaryOperator::NotEqual: return CellValue::boolean(c != 0);
    case BinaryOperator::Less: return CellValue::boolean(c < 0);
    case BinaryOperator::LessEqual: return CellValue::boolean(c <= 0);
    case BinaryOperator::Greater: return CellValue::boolean(c > 0);
    case BinaryOperator::GreaterEqual: return CellValue::boolean(c >= 0);
    default: return value_error();
  }
}

CellValue apply_binary(BinaryOperator op, const CellValue& a, const CellValue& b) {
  if (a.is_error()) return a;
  if (b.is_error()) return b;
  if (op == BinaryOperator::Concat) return CellValue::text(display_text(a) + display_text(b));
  if (!formula::is_arithmetic(op)) return compare(op, a, b);

  const Number x = to_number(a);
  if (x.error) return *x.error;
  const Number y = to_number(b);
  if (y.error) return *y.error;
  switch (op) {
    case BinaryOperator::Add: return make_number(x.value + y.value);
    case BinaryOperator::Subtract: return make_number(x.value - y.value);
    case BinaryOperator::Multiply: return make_number(x.value * y.value);
    case BinaryOperator::Divide:
      if (y.value == 0.0) return CellValue::error(error_code::kDivZero);
      return make_number(x.value / y.value);
    default: return value_error();
  }
}

}  // namespace

CellValue RowEvaluator::eval(const formula::Ast& ast) const {
  using namespace formula;
  return std::visit(
      [this](const auto& node) -> CellValue {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          return node.value;
        } else if constexpr (std::is_same_v<T, ColumnRef>) {
          const Column* col = table_.find(node.header);
          if (!col) return CellValue::error(error_code::kName);
          return col->cells[row_];
        } else if constexpr (std::is_same_v<T, FuncCall>) {
          const auto& registry = builtins();
          auto it = registry.find(node.name);
          if (it == registry.end()) return CellValue::error(error_code::kName);
          const Builtin& b = it->second;
          if (node.args.size() < b.min_args || node.args.size() > b.max_args) return value_error();
          return b.fn(std::span<const Ast>(node.args), *this);
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          return apply_binary(node.op, eval(*node.lhs), eval(*node.rhs));
        } else {
          CellValue v = eval(*node.operand);
          if (node.op == UnaryOperator::Plus) return v;
          const Number n = to_number(v);
          if (n.error) return *n.error;
          return make_number(-n.value);
        }
      },
      ast.node);
}

}  // namespace interp

const std::set<std::string>& supported_functions() {
  static const std::set<std::string> names = [] {
    std::set<std::string> out;
    for (const auto& [name, _] : interp::builtins()) out.insert(name);
    return out;
  }();
  return names;
}

std::set<std::string> unsupported_functions(const formula::Ast& ast) {
  std::set<std::string> out;
  for (const std::string& fn : formula::metrics(ast).unique_functions) {
    if (!supported_functions().count(fn)) out.insert(fn);
  }
  return out;
}

CellValue evaluate_row(const formula::Ast& ast, const Table& table, std::size_t row) {
  if (row >= table.row_count()) {
    throw std::out_of_range("row " + std::to_string(row) + " out of range (table has " +
                            std::to_string(table.row_count()) + " rows)");
  }
  return interp::RowEvaluator(table, row).eval(ast);
}

EvalOutcome evaluate_formula(const formula::Ast& ast, const Table& table) {
  for (const std::string& header : formula::column_references(ast)) {
    if (!table.has_column(header)) throw EvaluationError("formula references unknown column '" + header + "'");
  }
  EvalOutcome out;
  out.column.header = "derived";
  out.column.cells.reserve(table.row_count());
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    CellValue v = interp::RowEvaluator(table, r).eval(ast);
    if (v.is_error()) out.per_row_errors.emplace_back(r, v.error_code());
    out.column.cells.push_back(std::move(v));
  }
  return out;
}

}  // namespace nl2f
