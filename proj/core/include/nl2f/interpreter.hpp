#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nl2f/formula.hpp"
#include "nl2f/table.hpp"

namespace nl2f {

struct EvalOutcome {
  Column column;  // header "derived"
  std::vector<std::pair<std::size_t, std::string>> per_row_errors;

  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;
};

// Names of the built-in functions the interpreter can execute.
const std::set<std::string>& supported_functions();

// Functions referenced by `ast` that the interpreter cannot execute.
std::set<std::string> unsupported_functions(const formula::Ast& ast);

// Value of the formula at one row. Failures come back as Error cells; throws
// std::out_of_range only for a bad row index.
CellValue evaluate_row(const formula::Ast& ast, const Table& table, std::size_t row);

// Row-wise F(T). Throws EvaluationError if the formula references a column
// the table does not have; no row is evaluated in that case.
EvalOutcome evaluate_formula(const formula::Ast& ast, const Table& table);

}  // namespace nl2f
