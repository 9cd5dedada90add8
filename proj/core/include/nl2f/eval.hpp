#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nl2f/comparator.hpp"
#include "nl2f/corpus.hpp"
#include "nl2f/dataset.hpp"
#include "nl2f/llm.hpp"

namespace nl2f::eval {

enum class Outcome { ParseError, EvalError, Mismatch, Match };

std::string_view to_string(Outcome outcome) noexcept;
std::optional<Outcome> parse_outcome(std::string_view text);

// Executes both formulas on `table` and compares the output columns with the
// validator relaxations. Throws EvaluationError if the gold formula cannot be
// parsed or evaluated.
Outcome execution_match(std::string_view predicted, std::string_view gold, const Table& table,
                        const MatchOptions& options = {});

// Unbiased estimator 1 - C(n-c, k) / C(n, k). Throws std::domain_error unless
// 0 <= c <= n and 1 <= k <= n.
double pass_at_k(int n, int c, int k);

enum class Scoring {
  Unbiased,  // pass_at_k over all n samples
  FirstK,    // 1 if any of the first k samples matches
};

std::string_view to_string(Scoring scoring) noexcept;
std::optional<Scoring> parse_scoring(std::string_view text);

// First line beginning with "=" wins; otherwise the first line of the first
// fenced block; otherwise nothing.
std::optional<std::string> extract_formula(std::string_view completion);

struct TaskResult {
  enum class Status { Scored, TransportError, Unevaluable };

  std::string task_id;
  Status status = Status::Scored;
  std::vector<std::string> completions;               // verbatim model output
  std::vector<std::optional<std::string>> predictions;  // extracted formulas
  std::vector<Outcome> outcomes;
  int correct = 0;
  std::string error;

  int samples() const noexcept { return static_cast<int>(outcomes.size()); }

  friend bool operator==(const TaskResult&, const TaskResult&) = default;
};

std::string_view to_string(TaskResult::Status status) noexcept;

struct BenchmarkReport {
  std::string model;
  int n = 10;
  double temperature = 0.6;
  Scoring scoring = Scoring::Unbiased;
  std::vector<int> k_list{5};
  std::vector<TaskResult> tasks;
  std::map<int, double> pass_at_k;  // mean over scored tasks
  std::vector<std::string> solved_ids;
  std::size_t scored_tasks = 0;
  std::size_t transport_failures = 0;
  std::size_t unevaluable_tasks = 0;
};

// Recomputes pass_at_k, solved ids and counts from report.tasks.
void aggregate(BenchmarkReport& report);

struct BenchmarkOptions {
  int n = 10;
  double temperature = 0.6;
  std::vector<int> k_list{5};
  Scoring scoring = Scoring::Unbiased;
  std::size_t workers = 4;
  std::size_t preview_rows = llm::kDefaultPreviewRows;
  MatchOptions match;
};

TaskResult score_task(const Example& task, const std::vector<std::string>& completions, const MatchOptions& match);

// Requests options.n completions of the formula-prediction prompt per task and
// scores each by execution match.
BenchmarkReport run_benchmark(llm::Gateway& gateway, const llm::ChatModelSpec& model, const llm::PromptSet& prompts,
                              const std::vector<Example>& tasks, const BenchmarkOptions& options = {});

// Stats over the gold formulas of tasks with at least one correct prediction.
dataset::SubsetStats solved_case_analysis(const BenchmarkReport& report, const std::vector<Example>& tasks);

// Functions used by some parseable prediction of `finetuned` but by none of
// `base`, restricted to `removed`.
std::set<std::string> recovered_functions(const BenchmarkReport& base, const BenchmarkReport& finetuned,
                                          const std::set<std::string>& removed);

std::set<std::string> predicted_functions(const BenchmarkReport& report);

nlohmann::ordered_json report_to_json(const BenchmarkReport& report);
BenchmarkReport report_from_json(const nlohmann::json& json);
void save_report(const BenchmarkReport& report, const std::filesystem::path& path);
BenchmarkReport load_report(const std::filesystem::path& path);

}  // namespace nl2f::eval
