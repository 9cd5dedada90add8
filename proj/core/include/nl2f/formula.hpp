#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nl2f/table.hpp"

namespace nl2f::formula {

// Owning pointer with value semantics, used for recursive AST children.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

enum class BinaryOperator { Add, Subtract, Multiply, Divide, Concat, Equal, NotEqual, Less, LessEqual, Greater, GreaterEqual };
enum class UnaryOperator { Negate, Plus };

std::string_view symbol(BinaryOperator op) noexcept;
std::string_view symbol(UnaryOperator op) noexcept;
bool is_arithmetic(BinaryOperator op) noexcept;

struct Ast;

struct ConstNode {
  CellValue value;
  friend bool operator==(const ConstNode&, const ConstNode&) = default;
};

struct ColumnRef {
  std::string header;
  friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

struct FuncCall {
  std::string name;  // uppercase
  std::vector<Ast> args;
  friend bool operator==(const FuncCall&, const FuncCall&);
};

struct BinaryOp {
  BinaryOperator op;
  Box<Ast> lhs;
  Box<Ast> rhs;
  friend bool operator==(const BinaryOp&, const BinaryOp&);
};

struct UnaryOp {
  UnaryOperator op;
  Box<Ast> operand;
  friend bool operator==(const UnaryOp&, const UnaryOp&);
};

// Parsed derived-column formula. Leaves are constants or column references
// (or zero-argument calls such as PI()).
struct Ast {
  std::variant<ConstNode, ColumnRef, FuncCall, BinaryOp, UnaryOp> node;
  friend bool operator==(const Ast&, const Ast&) = default;
};

inline bool operator==(const FuncCall& a, const FuncCall& b) { return a.name == b.name && a.args == b.args; }
inline bool operator==(const BinaryOp& a, const BinaryOp& b) { return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs; }
inline bool operator==(const UnaryOp& a, const UnaryOp& b) { return a.op == b.op && a.operand == b.operand; }

Ast constant(CellValue value);
Ast number(double v);
Ast text(std::string s);
Ast column(std::string header);
Ast call(std::string name, std::vector<Ast> args);
Ast binary(BinaryOperator op, Ast lhs, Ast rhs);
Ast unary(UnaryOperator op, Ast operand);

// Parses the formula grammar documented in docs/grammar.md. Throws
// FormulaSyntaxError.
Ast parse(std::string_view text);

// Canonical, fully parenthesized text with a leading "=". parse(render(a)) == a
// for every AST parse can produce.
std::string render(const Ast& ast);

struct Metrics {
  int function_call_count = 0;
  int depth = 0;
  int operator_count = 0;
  std::set<std::string> unique_functions;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics metrics(const Ast& ast);

std::set<std::string> column_references(const Ast& ast);

// True iff every column reference names a column of `table`.
bool is_derived_column(const Ast& ast, const Table& table);

bool uses_deprecated_function(const Ast& ast, const std::set<std::string>& deprecated);

// One function name per line; blank lines and '#' comments ignored; names are
// uppercased.
std::set<std::string> parse_function_list(std::string_view text);
std::set<std::string> load_function_list(const std::filesystem::path& path);
// The list shipped in share/deprecated_functions.txt.
std::set<std::string> default_deprecated_functions();

}  // namespace nl2f::formula
