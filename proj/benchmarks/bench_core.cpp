#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "nl2f/nl2f.hpp"

using namespace nl2f;

namespace {

const char* const kFormulas[] = {
    "=[A]+[B]",
    "=IF([A]>10,\"high\",\"low\")",
    "=ROUND(AVERAGE([A],[B],[C])*1.2,2)",
    "=IFERROR(CONCATENATE(UPPER(LEFT([Name],1)),LOWER(MID([Name],2,LEN([Name])))),\"\")",
    "=IF(AND([A]>0,OR([B]<5,NOT([C]=3))),MAX([A],[B])-MIN([B],[C]),ABS([A]-[C]))",
};

Table random_table(std::size_t rows) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> num(-100, 100);
  const char* names[] = {"alice smith", "Bob", "carol  JONES", "dave", "Eve-Marie"};
  std::vector<Column> cols = {{"A", {}}, {"B", {}}, {"C", {}}, {"Name", {}}};
  for (std::size_t i = 0; i < rows; ++i) {
    for (int c = 0; c < 3; ++c) cols[c].cells.push_back(CellValue::number(std::round(num(gen) * 100) / 100));
    cols[3].cells.push_back(CellValue::text(names[gen() % 5]));
  }
  return Table(std::move(cols));
}

void BM_Parse(benchmark::State& state) {
  const char* text = kFormulas[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(formula::parse(text));
}
BENCHMARK(BM_Parse)->DenseRange(0, 4);

void BM_Evaluate(benchmark::State& state) {
  const auto ast = formula::parse(kFormulas[state.range(0)]);
  const Table table = random_table(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_formula(ast, table));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_Evaluate)->ArgsProduct({{0, 2, 4}, {20, 1000}});

void BM_Metrics(benchmark::State& state) {
  const auto ast = formula::parse(kFormulas[4]);
  for (auto _ : state) benchmark::DoNotOptimize(formula::metrics(ast));
}
BENCHMARK(BM_Metrics);

void BM_SubstringCoefficient(benchmark::State& state) {
  std::mt19937_64 gen(3);
  std::string a, b;
  for (int i = 0; i < state.range(0); ++i) {
    a.push_back(static_cast<char>('a' + gen() % 4));
    b.push_back(static_cast<char>('a' + gen() % 4));
  }
  for (auto _ : state) benchmark::DoNotOptimize(substring_coefficient(a, b));
}
BENCHMARK(BM_SubstringCoefficient)->RangeMultiplier(4)->Range(8, 512);

void BM_ColumnsMatch(benchmark::State& state) {
  const Table table = random_table(static_cast<std::size_t>(state.range(0)));
  const Column expected = table.columns()[3];
  Column actual = expected;
  for (auto& cell : actual.cells) cell = CellValue::text(display_text(cell) + "s");
  for (auto _ : state) benchmark::DoNotOptimize(columns_match(expected, actual));
}
BENCHMARK(BM_ColumnsMatch)->Arg(20)->Arg(1000);

void BM_PassAtK(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int c = 0; c <= n; ++c) benchmark::DoNotOptimize(eval::pass_at_k(n, c, 5));
  }
}
BENCHMARK(BM_PassAtK)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
