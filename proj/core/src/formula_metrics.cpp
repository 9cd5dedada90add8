#include <fstream>
#include <sstream>

#include "nl2f/error.hpp"
#include "nl2f/formula.hpp"
#include "resources.hpp"
#include "text_util.hpp"

namespace nl2f::formula {

namespace {

// Returns the depth (function calls on the deepest path) of `ast`.
int walk(const Ast& ast, Metrics& m) {
  return std::visit(
      [&m](const auto& node) -> int {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FuncCall>) {
          ++m.function_call_count;
          m.unique_functions.insert(node.name);
          int deepest = 0;
          for (const Ast& arg : node.args) deepest = std::max(deepest, walk(arg, m));
          return deepest + 1;
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          if (is_arithmetic(node.op)) ++m.operator_count;
          return std::max(walk(*node.lhs, m), walk(*node.rhs, m));
        } else if constexpr (std::is_same_v<T, UnaryOp>) {
          return walk(*node.operand, m);
        } else {
          return 0;
        }
      },
      ast.node);
}

void collect_columns(const Ast& ast, std::set<std::string>& out) {
  std::visit(
      [&out](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, ColumnRef>) {
          out.insert(node.header);
        } else if constexpr (std::is_same_v<T, FuncCall>) {
          for (const Ast& arg : node.args) collect_columns(arg, out);
        } else if constexpr (std::is_same_v<T, BinaryOp>) {
          collect_columns(*node.lhs, out);
          collect_columns(*node.rhs, out);
        } else if constexpr (std::is_same_v<T, UnaryOp>) {
          collect_columns(*node.operand, out);
        }
      },
      ast.node);
}

}  // namespace

Metrics metrics(const Ast& ast) {
  Metrics m;
  m.depth = walk(ast, m);
  return m;
}

std::set<std::string> column_references(const Ast& ast) {
  std::set<std::string> out;
  collect_columns(ast, out);
  return out;
}

bool is_derived_column(const Ast& ast, const Table& table) {
  for (const std::string& header : column_references(ast)) {
    if (!table.has_column(header)) return false;
  }
  return true;
}

bool uses_deprecated_function(const Ast& ast, const std::set<std::string>& deprecated) {
  for (const std::string& fn : metrics(ast).unique_functions) {
    if (deprecated.count(fn)) return true;
  }
  return false;
}

std::set<std::string> parse_function_list(std::string_view text) {
  std::set<std::string> out;
  for (std::string_view line : split_lines(text)) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.insert(to_upper(line));
  }
  return out;
}

std::set<std::string> load_function_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read function list '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_function_list(ss.str());
}

std::set<std::string> default_deprecated_functions() { return parse_function_list(resources::deprecated_functions()); }

}  // namespace nl2f::formula
