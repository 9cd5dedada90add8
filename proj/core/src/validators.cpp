#include "nl2f/validators.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "nl2f/interpreter.hpp"
#include "text_util.hpp"

namespace nl2f::validation {

namespace {

// Gold side of a validation: the rows shown to the model and F over them.
struct Prepared {
  Table table;
  Column expected;
  std::string utterance;
  std::string formula_text;
};

Prepared prepare(const Example& example, const Context& ctx) {
  if (!example.utterance || trim(*example.utterance).empty()) {
    throw ValidatorError("example '" + example.id + "' has no utterance");
  }
  formula::Ast ast = [&] {
    try {
      return formula::parse(example.formula);
    } catch (const FormulaSyntaxError& e) {
      throw ValidatorError(std::string("unevaluable gold formula: ") + e.what());
    }
  }();
  if (auto missing = unsupported_functions(ast); !missing.empty()) {
    throw ValidatorError("unevaluable gold formula: unsupported function " + *missing.begin());
  }
  Table shown = example.table.head(ctx.preview_rows);
  try {
    Column expected = evaluate_formula(ast, shown).column;
    return Prepared{std::move(shown), std::move(expected), *example.utterance, std::string(trim(example.formula))};
  } catch (const EvaluationError& e) {
    throw ValidatorError(std::string("unevaluable gold formula: ") + e.what());
  }
}

std::string ask(const Context& ctx, llm::TemplateId id, const llm::PromptFields& fields) {
  if (!ctx.gateway) throw ConfigError("validator context has no gateway");
  llm::ChatModelSpec spec = ctx.model;
  spec.n = 1;
  spec.temperature = 0.0;
  try {
    return ctx.gateway->complete(spec, ctx.prompts.render(id, fields)).at(0);
  } catch (const TransportError& e) {
    throw ValidatorError(std::string("model call failed: ") + e.what());
  }
}

llm::PromptFields fields_for(const Prepared& p, std::size_t preview_rows) {
  llm::PromptFields f;
  f.table = llm::render_table_preview(p.table, preview_rows);
  f.formula = p.formula_text;
  f.utterance = p.utterance;
  f.row_count = std::to_string(p.table.row_count());
  return f;
}

Column to_column(const std::vector<std::string>& cells, std::string header) {
  Column c{std::move(header), {}};
  for (const std::string& s : cells) c.cells.push_back(parse_cell(s));
  return c;
}

bool is_fence(std::string_view line) { return trim(line).substr(0, 3) == "```"; }

}  // namespace

std::string column_text(const Column& column) {
  std::string out;
  for (std::size_t i = 0; i < column.cells.size(); ++i) {
    if (i) out.push_back('\n');
    out += display_text(column.cells[i]);
  }
  return out;
}

VerdictRecord Verdict::to_record() const {
  VerdictRecord r;
  r.accepted = accepted;
  r.reason = reason;
  if (const auto* p = std::get_if<PredictedColumn>(&evidence)) {
    r.evidence = column_text(p->column);
  } else if (const auto* run = std::get_if<ProgramRun>(&evidence)) {
    r.evidence = run->program;
    if (run->output) {
      r.evidence += "\n--- output ---\n" + column_text(*run->output);
    } else if (!run->error.empty()) {
      r.evidence += "\n--- error ---\n" + run->error;
    }
  } else if (const auto* label = std::get_if<Label>(&evidence)) {
    r.evidence = label->raw;
  }
  return r;
}

std::vector<std::string> completion_lines(std::string_view completion) {
  std::vector<std::string_view> raw = split_lines(completion);
  // Keep only the inside of the first fenced block, if there is one.
  auto open = std::find_if(raw.begin(), raw.end(), [](std::string_view l) { return is_fence(l); });
  if (open != raw.end()) {
    auto close = std::find_if(open + 1, raw.end(), [](std::string_view l) { return is_fence(l); });
    raw = std::vector<std::string_view>(open + 1, close);
  }
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (std::string_view l : raw) out.emplace_back(trim(l));
  return out;
}

std::optional<Column> parse_predicted_column(std::string_view completion, std::size_t rows) {
  std::vector<std::string> lines = completion_lines(completion);
  while (lines.size() > rows && !lines.empty() && lines.back().empty()) lines.pop_back();
  while (lines.size() > rows && !lines.empty() && lines.front().empty()) lines.erase(lines.begin());
  if (rows > 0 && std::all_of(lines.begin(), lines.end(), [](const std::string& l) { return l.empty(); })) {
    return std::nullopt;
  }
  if (lines.size() == rows + 1) lines.erase(lines.begin());  // header line
  Column c{"predicted", {}};
  for (const std::string& l : lines) c.cells.push_back(parse_cell(llm::strip_quotes(l)));
  return c;
}

std::optional<std::string> extract_first_code_block(std::string_view completion) {
  const std::size_t open = completion.find("```");
  if (open == std::string_view::npos) return std::nullopt;
  std::size_t body = completion.find('\n', open);
  if (body == std::string_view::npos) return std::nullopt;
  ++body;
  std::size_t close = completion.find("```", body);
  if (close == std::string_view::npos) close = completion.size();
  std::string code(completion.substr(body, close - body));
  if (trim(code).empty()) return std::nullopt;
  return code;
}

std::optional<bool> parse_label(std::string_view completion) {
  std::string_view s = trim(completion);
  while (!s.empty() && !std::isalnum(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  std::size_t end = 0;
  while (end < s.size() && std::isalnum(static_cast<unsigned char>(s[end]))) ++end;
  const std::string token = to_lower(s.substr(0, end));
  if (token == "yes" || token == "true" || token == "correct" || token == "1") return true;
  if (token == "no" || token == "false" || token == "incorrect" || token == "0") return false;
  return std::nullopt;
}

Verdict validate_output_prediction(const Example& example, const Context& ctx) {
  const Prepared p = prepare(example, ctx);
  const std::string completion = ask(ctx, llm::TemplateId::OutputPrediction, fields_for(p, ctx.preview_rows));

  Verdict v;
  v.validator = ValidatorId::VO;
  auto predicted = parse_predicted_column(completion, p.table.row_count());
  if (!predicted) {
    v.accepted = false;
    v.evidence = Label{completion};
    v.reason = "unparseable prediction";
    return v;
  }
  ComparisonReport report = columns_match(p.expected, *predicted, ctx.match);
  v.accepted = report.matched;
  v.reason = report.matched ? "all " + std::to_string(report.rows_compared) + " rows match" : report.reason;
  v.evidence = PredictedColumn{std::move(*predicted)};
  v.comparison = std::move(report);
  return v;
}

Verdict validate_alt_code(const Example& example, const Context& ctx) {
  if (!ctx.runner) throw ConfigError("the VP validator needs a program runner (--runner-cmd)");
  const Prepared p = prepare(example, ctx);
  const std::string completion = ask(ctx, llm::TemplateId::ProgramGeneration, fields_for(p, ctx.preview_rows));

  Verdict v;
  v.validator = ValidatorId::VP;
  auto program = extract_first_code_block(completion);
  if (!program) {
    v.accepted = false;
    v.evidence = Label{completion};
    v.reason = "no program";
    return v;
  }
  const RunResponse response = ctx.runner->run(RunRequest{*program, p.table, ctx.runner_timeout_ms, ctx.runner_memory_mb});
  if (response.status != RunResponse::Status::Ok) {
    v.accepted = false;
    v.evidence = ProgramRun{*program, std::nullopt, response.error};
    v.reason = response.status == RunResponse::Status::Timeout ? "timeout" : "runtime error: " + response.error;
    return v;
  }
  Column output = to_column(response.column, "program");
  ComparisonReport report = columns_match(p.expected, output, ctx.match);
  v.accepted = report.matched;
  v.reason = report.matched ? "all " + std::to_string(report.rows_compared) + " rows match" : report.reason;
  v.evidence = ProgramRun{*program, std::move(output), {}};
  v.comparison = std::move(report);
  return v;
}

Verdict validate_classification(const Example& example, const Context& ctx) {
  const Prepared p = prepare(example, ctx);
  const std::string completion = ask(ctx, llm::TemplateId::Classification, fields_for(p, ctx.preview_rows));
  Verdict v;
  v.validator = ValidatorId::VC;
  v.evidence = Label{completion};
  if (auto label = parse_label(completion)) {
    v.accepted = *label;
    v.reason = *label ? "label: accurate" : "label: inaccurate";
  } else {
    v.accepted = false;
    v.reason = "unparseable label";
  }
  return v;
}

Verdict validate(ValidatorId id, const Example& example, const Context& context) {
  switch (id) {
    case ValidatorId::VO: return validate_output_prediction(example, context);
    case ValidatorId::VP: return validate_alt_code(example, context);
    case ValidatorId::VC: return validate_classification(example, context);
  }
  throw ConfigError("unknown validator");
}

namespace {

std::map<std::string, Example> load_checkpoint(const std::filesystem::path& path) {
  std::map<std::string, Example> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    try {
      Example ex = example_from_json(nlohmann::json::parse(line), "checkpoint");
      std::string id = ex.id;
      out.insert_or_assign(std::move(id), std::move(ex));
    } catch (const std::exception&) {
      // A torn final line from an interrupted run.
    }
  }
  return out;
}

bool reusable(const Example& saved, const Example& current, const std::vector<ValidatorId>& which) {
  if (saved.formula != current.formula || saved.utterance != current.utterance || !(saved.table == current.table)) {
    return false;
  }
  for (ValidatorId id : which) {
    const bool has_verdict = saved.verdicts.count(id) > 0;
    const bool has_error = saved.provenance.contains("validator_errors") &&
                           saved.provenance["validator_errors"].contains(std::string(to_string(id)));
    if (!has_verdict && !has_error) return false;
  }
  return true;
}

void validate_one(Example& ex, const std::vector<ValidatorId>& which, const Context& ctx) {
  if (ex.table.row_count() > ctx.preview_rows) ex.provenance["compared_rows"] = ctx.preview_rows;
  for (ValidatorId id : which) {
    const std::string key(to_string(id));
    try {
      ex.verdicts[id] = validate(id, ex, ctx).to_record();
      if (ex.provenance.contains("validator_errors")) {
        ex.provenance["validator_errors"].erase(key);
        if (ex.provenance["validator_errors"].empty()) ex.provenance.erase("validator_errors");
      }
    } catch (const ValidatorError& e) {
      ex.verdicts.erase(id);
      ex.provenance["validator_errors"][key] = e.what();
    }
  }
}

}  // namespace

std::vector<Example> run_validation(std::vector<Example> corpus, const std::vector<ValidatorId>& which,
                                    const Context& context, const RunOptions& options) {
  if (which.empty() || corpus.empty()) return corpus;

  std::map<std::string, Example> saved;
  std::ofstream checkpoint;
  if (options.checkpoint) {
    saved = load_checkpoint(*options.checkpoint);
    checkpoint.open(*options.checkpoint, std::ios::app);
    if (!checkpoint) throw Error("cannot open checkpoint '" + options.checkpoint->string() + "'");
  }
  std::mutex checkpoint_mutex;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= corpus.size() || stop.load()) return;
      Example& ex = corpus[i];
      try {
        if (auto it = saved.find(ex.id); it != saved.end() && reusable(it->second, ex, which)) {
          for (ValidatorId id : which) {
            if (auto v = it->second.verdicts.find(id); v != it->second.verdicts.end()) ex.verdicts[id] = v->second;
          }
          ex.provenance = it->second.provenance;
          continue;
        }
        validate_one(ex, which, context);
        if (checkpoint.is_open()) {
          std::lock_guard lock(checkpoint_mutex);
          checkpoint << example_to_json(ex).dump() << '\n' << std::flush;
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop = true;
        return;
      }
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, std::min(options.workers, corpus.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return corpus;
}

}  // namespace nl2f::validation
