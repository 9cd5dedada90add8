#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nl2f/error.hpp"
#include "nl2f/eval.hpp"
#include "nl2f/interpreter.hpp"
#include "nl2f/validators.hpp"
#include "text_util.hpp"

namespace nl2f::eval {

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::ParseError: return "parse-error";
    case Outcome::EvalError: return "eval-error";
    case Outcome::Mismatch: return "mismatch";
    case Outcome::Match: return "match";
  }
  return "unknown";
}

std::optional<Outcome> parse_outcome(std::string_view text) {
  for (Outcome o : {Outcome::ParseError, Outcome::EvalError, Outcome::Mismatch, Outcome::Match}) {
    if (text == to_string(o)) return o;
  }
  return std::nullopt;
}

std::string_view to_string(Scoring scoring) noexcept {
  return scoring == Scoring::Unbiased ? "unbiased" : "first-k";
}

std::optional<Scoring> parse_scoring(std::string_view text) {
  if (text == "unbiased") return Scoring::Unbiased;
  if (text == "first-k") return Scoring::FirstK;
  return std::nullopt;
}

std::string_view to_string(TaskResult::Status status) noexcept {
  switch (status) {
    case TaskResult::Status::Scored: return "scored";
    case TaskResult::Status::TransportError: return "transport-error";
    case TaskResult::Status::Unevaluable: return "unevaluable";
  }
  return "unknown";
}

namespace {

Column evaluate_gold(std::string_view gold, const Table& table) {
  formula::Ast ast;
  try {
    ast = formula::parse(gold);
  } catch (const FormulaSyntaxError& e) {
    throw EvaluationError("gold formula does not parse: " + std::string(e.what()));
  }
  if (auto missing = unsupported_functions(ast); !missing.empty()) {
    throw EvaluationError("gold formula uses unsupported function " + *missing.begin());
  }
  return evaluate_formula(ast, table).column;
}

Outcome match_against(std::string_view predicted, const Column& gold, const Table& table, const MatchOptions& options) {
  formula::Ast ast;
  try {
    ast = formula::parse(predicted);
  } catch (const FormulaSyntaxError&) {
    return Outcome::ParseError;
  }
  if (!unsupported_functions(ast).empty() || !formula::is_derived_column(ast, table)) return Outcome::EvalError;
  const Column out = evaluate_formula(ast, table).column;
  return columns_match(gold, out, options).matched ? Outcome::Match : Outcome::Mismatch;
}

}  // namespace

Outcome execution_match(std::string_view predicted, std::string_view gold, const Table& table,
                        const MatchOptions& options) {
  return match_against(predicted, evaluate_gold(gold, table), table, options);
}

double pass_at_k(int n, int c, int k) {
  if (n < 1 || c < 0 || c > n || k < 1 || k > n) {
    throw std::domain_error("pass_at_k requires 0 <= c <= n and 1 <= k <= n (got n=" + std::to_string(n) +
                            ", c=" + std::to_string(c) + ", k=" + std::to_string(k) + ")");
  }
  if (c == 0) return 0.0;
  if (n - c < k) return 1.0;
  if (k == 1) return static_cast<double>(c) / static_cast<double>(n);
  // C(n-c,k)/C(n,k) = prod_{i=n-c+1}^{n} (1 - k/i), taken from i = n downwards
  // so that the result is monotone in both c and k under rounding.
  double miss = 1.0;
  for (int i = n; i > n - c; --i) miss *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  return 1.0 - miss;
}

std::optional<std::string> extract_formula(std::string_view completion) {
  for (std::string_view line : split_lines(completion)) {
    line = trim(line);
    if (!line.empty() && line.front() == '=') return std::string(line);
  }
  if (auto block = validation::extract_first_code_block(completion)) {
    for (std::string_view line : split_lines(*block)) {
      line = trim(line);
      if (!line.empty()) return std::string(line);
    }
  }
  return std::nullopt;
}

TaskResult score_task(const Example& task, const std::vector<std::string>& completions, const MatchOptions& match) {
  TaskResult r;
  r.task_id = task.id;
  r.completions = completions;
  Column gold;
  try {
    gold = evaluate_gold(task.reference_formula(), task.table);
  } catch (const EvaluationError& e) {
    r.status = TaskResult::Status::Unevaluable;
    r.error = e.what();
    return r;
  }
  for (const std::string& c : completions) {
    auto pred = extract_formula(c);
    const Outcome o = pred ? match_against(*pred, gold, task.table, match) : Outcome::ParseError;
    r.predictions.push_back(std::move(pred));
    r.outcomes.push_back(o);
    if (o == Outcome::Match) ++r.correct;
  }
  return r;
}

void aggregate(BenchmarkReport& report) {
  report.pass_at_k.clear();
  report.solved_ids.clear();
  report.scored_tasks = report.transport_failures = report.unevaluable_tasks = 0;
  std::map<int, double> sums;
  for (const TaskResult& t : report.tasks) {
    if (t.status == TaskResult::Status::TransportError) {
      ++report.transport_failures;
      continue;
    }
    if (t.status == TaskResult::Status::Unevaluable) {
      ++report.unevaluable_tasks;
      continue;
    }
    ++report.scored_tasks;
    if (t.correct >= 1) report.solved_ids.push_back(t.task_id);
    for (int k : report.k_list) {
      double score = 0.0;
      if (report.scoring == Scoring::Unbiased) {
        score = pass_at_k(t.samples(), t.correct, k);
      } else {
        const auto end = t.outcomes.begin() + std::min<std::ptrdiff_t>(k, t.samples());
        score = std::find(t.outcomes.begin(), end, Outcome::Match) != end ? 1.0 : 0.0;
      }
      sums[k] += score;
    }
  }
  if (report.scored_tasks == 0) return;
  for (int k : report.k_list) report.pass_at_k[k] = sums[k] / static_cast<double>(report.scored_tasks);
}

BenchmarkReport run_benchmark(llm::Gateway& gateway, const llm::ChatModelSpec& model, const llm::PromptSet& prompts,
                              const std::vector<Example>& tasks, const BenchmarkOptions& options) {
  if (options.n < 1) throw ConfigError("n must be at least 1");
  if (options.k_list.empty()) throw ConfigError("k list is empty");
  for (int k : options.k_list) {
    if (k < 1 || k > options.n) {
      throw ConfigError("k=" + std::to_string(k) + " outside 1.." + std::to_string(options.n));
    }
  }
  for (const Example& t : tasks) {
    if (!t.utterance) throw CorpusError("task '" + t.id + "' has no utterance");
  }

  llm::ChatModelSpec spec = model;
  spec.n = options.n;
  spec.temperature = options.temperature;
  spec.validate();

  BenchmarkReport report;
  report.model = model.model;
  report.n = options.n;
  report.temperature = options.temperature;
  report.scoring = options.scoring;
  report.k_list = options.k_list;
  report.tasks.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Example& task = tasks[i];
      try {
        llm::PromptFields fields;
        fields.table = llm::render_table_preview(task.table, options.preview_rows);
        fields.utterance = *task.utterance;
        std::vector<std::string> completions;
        try {
          completions = gateway.complete(spec, prompts.render(llm::TemplateId::FormulaPrediction, fields));
        } catch (const TransportError& e) {
          TaskResult r;
          r.task_id = task.id;
          r.status = TaskResult::Status::TransportError;
          r.error = e.what();
          report.tasks[i] = std::move(r);
          continue;
        }
        report.tasks[i] = score_task(task, completions, options.match);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min(options.workers, tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  aggregate(report);
  return report;
}

dataset::SubsetStats solved_case_analysis(const BenchmarkReport& report, const std::vector<Example>& tasks) {
  std::map<std::string, const Example*> by_id;
  for (const Example& t : tasks) by_id[t.id] = &t;
  std::vector<std::string> gold;
  for (const std::string& id : report.solved_ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw CorpusError("solved task '" + id + "' is missing from the task file");
    gold.push_back(it->second->reference_formula());
  }
  return dataset::subset_stats_of_formulas(gold);
}

std::set<std::string> predicted_functions(const BenchmarkReport& report) {
  std::set<std::string> out;
  for (const TaskResult& t : report.tasks) {
    for (const auto& p : t.predictions) {
      if (!p) continue;
      try {
        auto fns = formula::metrics(formula::parse(*p)).unique_functions;
        out.insert(fns.begin(), fns.end());
      } catch (const FormulaSyntaxError&) {
      }
    }
  }
  return out;
}

std::set<std::string> recovered_functions(const BenchmarkReport& base, const BenchmarkReport& finetuned,
                                          const std::set<std::string>& removed) {
  const std::set<std::string> base_fns = predicted_functions(base);
  std::set<std::string> out;
  for (const std::string& fn : predicted_functions(finetuned)) {
    if (!base_fns.count(fn) && removed.count(fn)) out.insert(fn);
  }
  return out;
}

}  // namespace nl2f::eval
