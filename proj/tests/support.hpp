#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nl2f/nl2f.hpp"

namespace nl2f::test {

using ColumnSpec = std::pair<std::string, std::vector<std::string>>;

inline Table make_table(const std::vector<ColumnSpec>& columns) {
  std::vector<Column> cols;
  for (const auto& [header, cells] : columns) {
    Column c{header, {}};
    for (const auto& s : cells) c.cells.push_back(parse_cell(s));
    cols.push_back(std::move(c));
  }
  return Table(std::move(cols));
}

inline Example make_example(std::string id, Table table, std::string formula,
                            std::optional<std::string> utterance = std::nullopt) {
  Example ex{std::move(id), std::move(table), std::move(formula)};
  ex.utterance = std::move(utterance);
  return ex;
}

inline std::vector<CellValue> cells(const std::vector<std::string>& raw) {
  std::vector<CellValue> out;
  for (const auto& s : raw) out.push_back(parse_cell(s));
  return out;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("nl2f-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Backend answering through a callback; counts calls.
class FnBackend : public llm::ChatBackend {
 public:
  using Fn = std::function<std::vector<std::string>(const llm::ChatModelSpec&, const std::string&)>;
  explicit FnBackend(Fn fn, bool live = false) : fn_(std::move(fn)), live_(live) {}

  std::vector<std::string> complete(const llm::ChatModelSpec& spec, const std::string& prompt) override {
    ++calls;
    return fn_(spec, prompt);
  }
  bool rate_limited() const override { return live_; }

  std::atomic<int> calls{0};

 private:
  Fn fn_;
  bool live_;
};

inline llm::GatewayOptions quiet_gateway(std::optional<std::filesystem::path> cache = std::nullopt) {
  llm::GatewayOptions o;
  o.cache_dir = std::move(cache);
  o.sleep = [](std::chrono::milliseconds) {};
  return o;
}

// The prompt a validator sends for `ex`, rebuilt from the template contract.
inline std::string validator_prompt(llm::TemplateId id, const Example& ex,
                                    std::size_t preview_rows = llm::kDefaultPreviewRows,
                                    const llm::PromptSet& prompts = llm::PromptSet::defaults()) {
  const Table shown = ex.table.head(preview_rows);
  llm::PromptFields f;
  f.table = llm::render_table_preview(shown, preview_rows);
  f.formula = ex.formula;
  f.utterance = ex.utterance.value_or("");
  f.row_count = std::to_string(shown.row_count());
  return prompts.render(id, f);
}

inline std::vector<std::string> runner_command() { return split_command(NL2F_TEST_RUNNER_CMD); }

inline bool runner_available() { return !std::string_view(NL2F_TEST_RUNNER_CMD).empty(); }

}  // namespace nl2f::test
