#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nl2f/comparator.hpp"
#include "nl2f/corpus.hpp"
#include "nl2f/error.hpp"
#include "nl2f/llm.hpp"
#include "nl2f/runner.hpp"

namespace nl2f::validation {

struct PredictedColumn {
  Column column;
};

struct ProgramRun {
  std::string program;
  std::optional<Column> output;
  std::string error;
};

struct Label {
  std::string raw;
};

using Evidence = std::variant<std::monostate, PredictedColumn, ProgramRun, Label>;

struct Verdict {
  ValidatorId validator = ValidatorId::VO;
  bool accepted = false;
  Evidence evidence;
  // Present for VO/VP whenever a prediction or program output was obtained.
  std::optional<ComparisonReport> comparison;
  std::string reason;

  VerdictRecord to_record() const;
};

// The validator could not reach a decision: the gold formula is not
// executable, or the model endpoint failed. Such examples are neither
// accepted nor rejected.
class ValidatorError : public Error {
 public:
  using Error::Error;
};

struct Context {
  llm::Gateway* gateway = nullptr;
  llm::ChatModelSpec model;  // validators run with temperature 0, n = 1
  llm::PromptSet prompts = llm::PromptSet::defaults();
  MatchOptions match;
  std::size_t preview_rows = llm::kDefaultPreviewRows;
  ProgramRunner* runner = nullptr;  // required for VP only
  int runner_timeout_ms = 10000;
  int runner_memory_mb = 512;
};

Verdict validate_output_prediction(const Example& example, const Context& context);
Verdict validate_alt_code(const Example& example, const Context& context);
Verdict validate_classification(const Example& example, const Context& context);
Verdict validate(ValidatorId id, const Example& example, const Context& context);

struct RunOptions {
  std::size_t workers = 4;
  // Completed examples are appended here and reused on the next run.
  std::optional<std::filesystem::path> checkpoint;
};

// Adds one verdict per requested validator to every example. Per-example
// failures are recorded under provenance["validator_errors"].
std::vector<Example> run_validation(std::vector<Example> corpus, const std::vector<ValidatorId>& which,
                                    const Context& context, const RunOptions& options = {});

// Parsing helpers, exposed for tests.

// One value per line; tolerates surrounding code fences and one extra header
// line. Returns nullopt if the line count does not fit `rows`.
std::optional<Column> parse_predicted_column(std::string_view completion, std::size_t rows);
std::vector<std::string> completion_lines(std::string_view completion);
std::optional<std::string> extract_first_code_block(std::string_view completion);
// First token decides: yes/true/correct/1 or no/false/incorrect/0.
std::optional<bool> parse_label(std::string_view completion);

// Text for PredictedColumn/ProgramRun evidence: one display value per line.
std::string column_text(const Column& column);

}  // namespace nl2f::validation
