#include "nl2f/formula.hpp"

namespace nl2f::formula {

std::string_view symbol(BinaryOperator op) noexcept {
  switch (op) {
    case BinaryOperator::Add: return "+";
    case BinaryOperator::Subtract: return "-";
    case BinaryOperator::Multiply: return "*";
    case BinaryOperator::Divide: return "/";
    case BinaryOperator::Concat: return "&";
    case BinaryOperator::Equal: return "=";
    case BinaryOperator::NotEqual: return "<>";
    case BinaryOperator::Less: return "<";
    case BinaryOperator::LessEqual: return "<=";
    case BinaryOperator::Greater: return ">";
    case BinaryOperator::GreaterEqual: return ">=";
  }
  return "?";
}

std::string_view symbol(UnaryOperator op) noexcept { return op == UnaryOperator::Negate ? "-" : "+"; }

bool is_arithmetic(BinaryOperator op) noexcept {
  return op == BinaryOperator::Add || op == BinaryOperator::Subtract || op == BinaryOperator::Multiply ||
         op == BinaryOperator::Divide;
}

Ast constant(CellValue value) { return Ast{ConstNode{std::move(value)}}; }
Ast number(double v) { return constant(CellValue::number(v)); }
Ast text(std::string s) { return constant(CellValue::text(std::move(s))); }
Ast column(std::string header) { return Ast{ColumnRef{std::move(header)}}; }
Ast call(std::string name, std::vector<Ast> args) { return Ast{FuncCall{std::move(name), std::move(args)}}; }
Ast binary(BinaryOperator op, Ast lhs, Ast rhs) { return Ast{BinaryOp{op, std::move(lhs), std::move(rhs)}}; }
Ast unary(UnaryOperator op, Ast operand) { return Ast{UnaryOp{op, std::move(operand)}}; }

namespace {

void quote(std::string& out, std::string_view s, char open, char close) {
  out.push_back(open);
  for (char c : s) {
    out.push_back(c);
    if (c == close) out.push_back(close);
  }
  out.push_back(close);
}

void render_into(std::string& out, const Ast& ast) {
  std::visit(
      [&out](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ConstNode>) {
          const CellValue& v = node.value;
          switch (v.kind()) {
            case CellValue::Kind::Number: out += format_number(v.as_number()); break;
            case CellValue::Kind::Text: quote(out, v.as_text(), '"', '"'); break;
            case CellValue::Kind::Boolean: out += v.as_boolean() ? "TRUE" : "FALSE"; break;
            case CellValue::Kind::Error: out += v.error_code(); break;
            // Blank has no literal syntax.
            case CellValue::Kind::Blank: out += "\"\""; break;
          }
        } else if constexpr (std::is_same_v<T, ColumnRef>) {
          quote(out, node.header, '[', ']');
        } else if constexpr (std::is_same_v<T, FuncCall>) {
          out += node.name;
          out.push_back('(');
          for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i) out.push_back(',');
            render_into(out, node.args[i]);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          out.push_back('(');
          render_into(out, *node.lhs);
          out += symbol(node.op);
          render_into(out, *node.rhs);
          out.push_back(')');
        } else {
          // Parenthesized so "-(5)" stays a unary node instead of folding.
          out += symbol(node.op);
          out.push_back('(');
          render_into(out, *node.operand);
          out.push_back(')');
        }
      },
      ast.node);
}

}  // namespace

std::string render(const Ast& ast) {
  std::string out = "=";
  render_into(out, ast);
  return out;
}

}  // namespace nl2f::formula
