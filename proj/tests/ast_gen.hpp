#pragma once

#include <random>
#include <string>
#include <vector>

#include "nl2f/formula.hpp"

namespace nl2f::test {

// Random ASTs in the shape parse() produces: numeric constants are never
// negative-literal children of a unary minus, function names are uppercase.
class AstGenerator {
 public:
  explicit AstGenerator(std::uint64_t seed) : rng_(seed) {}

  formula::Ast next(int budget = 4) { return gen(budget); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  formula::Ast leaf() {
    static const std::vector<std::string> headers = {"A", "B", "Long Name", "x]y", "Q1"};
    static const std::vector<std::string> texts = {"", "a", "say \"hi\"", "\xC3\xA9", "a,b"};
    switch (pick(6)) {
      case 0: return formula::column(headers[pick(static_cast<int>(headers.size()))]);
      case 1: return formula::number(pick(1000) / 8.0);
      case 2: return formula::number(-pick(50) - 1.5);
      case 3: return formula::text(texts[pick(static_cast<int>(texts.size()))]);
      case 4: return formula::constant(CellValue::boolean(pick(2) == 0));
      default: return formula::constant(CellValue::error(pick(2) ? "#N/A" : "#DIV/0!"));
    }
  }

  formula::Ast gen(int budget) {
    if (budget <= 0) return leaf();
    switch (pick(5)) {
      case 0: return leaf();
      case 1: {
        static const std::vector<std::string> names = {"IF", "SUM", "CONCATENATE", "AND", "PI", "FOO_2"};
        std::vector<formula::Ast> args;
        const int n = pick(4);
        for (int i = 0; i < n; ++i) args.push_back(gen(budget - 1));
        return formula::call(names[pick(static_cast<int>(names.size()))], std::move(args));
      }
      case 2: {
        auto operand = gen(budget - 1);
        return formula::unary(pick(2) ? formula::UnaryOperator::Negate : formula::UnaryOperator::Plus,
                              std::move(operand));
      }
      default: {
        const auto op = static_cast<formula::BinaryOperator>(pick(11));
        return formula::binary(op, gen(budget - 1), gen(budget - 1));
      }
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace nl2f::test
