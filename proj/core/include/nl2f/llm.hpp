#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nl2f/error.hpp"
#include "nl2f/formula.hpp"
#include "nl2f/table.hpp"

namespace nl2f::llm {

struct ChatModelSpec {
  std::string endpoint = "mock";  // "mock" or a chat-completions URL
  std::string model = "mock";
  double temperature = 0.0;       // [0, 2]
  int n = 1;                      // completions per request
  int max_tokens = 512;
  std::string credential_env;     // env var holding the API key

  // Throws ConfigError.
  void validate() const;
};

// Rows of the table shown to the model in every prompt.
inline constexpr std::size_t kDefaultPreviewRows = 20;

// Markdown-style grid: header row, separator, then min(row_count, max_rows)
// data rows. Lines are '\n' separated with no trailing newline.
std::string render_table_preview(const Table& table, std::size_t max_rows);

enum class TemplateId { Annotate, OutputPrediction, ProgramGeneration, Classification, FormulaPrediction };

std::string_view to_string(TemplateId id) noexcept;

// Values substituted for {table}, {formula}, {utterance} and {row_count}.
struct PromptFields {
  std::string table;
  std::string formula;
  std::string utterance;
  std::string row_count;
};

class PromptSet {
 public:
  // Templates compiled in from share/prompts.
  static PromptSet defaults();
  // Reads <dir>/<id>.txt for every template present there; others keep the
  // default. Throws ConfigError if a file lacks a required placeholder.
  static PromptSet load(const std::filesystem::path& dir);

  const std::string& text(TemplateId id) const { return templates_.at(id); }
  void set(TemplateId id, std::string text);

  std::string render(TemplateId id, const PromptFields& fields) const;

  static std::vector<std::string_view> required_placeholders(TemplateId id);
  static std::string_view file_name(TemplateId id);

 private:
  std::map<TemplateId, std::string> templates_;
};

// Failure raised by a backend. Transient failures are retried by the gateway.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, bool transient) : Error(what), transient_(transient) {}
  bool transient() const noexcept { return transient_; }

 private:
  bool transient_;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // Returns exactly spec.n completions or throws BackendError.
  virtual std::vector<std::string> complete(const ChatModelSpec& spec, const std::string& prompt) = 0;
  // Live endpoints are subject to the requests-per-minute budget.
  virtual bool rate_limited() const { return true; }
};

// Scripted responses keyed by literal prompt or by sha256 hex of the prompt.
class MockBackend : public ChatBackend {
 public:
  explicit MockBackend(std::map<std::string, std::vector<std::string>> script);
  static MockBackend from_json(const nlohmann::json& script);
  static MockBackend from_file(const std::filesystem::path& path);

  std::vector<std::string> complete(const ChatModelSpec& spec, const std::string& prompt) override;
  bool rate_limited() const override { return false; }

 private:
  std::map<std::string, std::vector<std::string>> script_;
};

// OpenAI-style POST {endpoint} with a JSON chat-completions body.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(std::chrono::seconds timeout = std::chrono::seconds(120));
  std::vector<std::string> complete(const ChatModelSpec& spec, const std::string& prompt) override;

 private:
  std::chrono::seconds timeout_;
};

struct GatewayOptions {
  std::optional<std::filesystem::path> cache_dir;
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;
  int max_in_flight = 4;
  int requests_per_minute = 60;  // <= 0 disables the budget
  // Replaced in tests to avoid real sleeps.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Shared entry point for all model calls: content-addressed disk cache,
// retries with exponential backoff, bounded concurrency and a request budget.
class Gateway {
 public:
  Gateway(std::shared_ptr<ChatBackend> backend, GatewayOptions options);

  std::vector<std::string> complete(const ChatModelSpec& spec, const std::string& prompt);

  // Depends on model, prompt, temperature, n and max_tokens only.
  static std::string cache_key(const ChatModelSpec& spec, const std::string& prompt);

  std::size_t backend_calls() const noexcept { return backend_calls_.load(); }
  std::size_t cache_hits() const noexcept { return cache_hits_.load(); }

 private:
  std::optional<std::vector<std::string>> read_cache(const std::string& key) const;
  void write_cache(const std::string& key, const ChatModelSpec& spec, const std::string& prompt,
                   const std::vector<std::string>& completions);
  void acquire_slot();
  void release_slot();
  void wait_for_budget();

  std::shared_ptr<ChatBackend> backend_;
  GatewayOptions options_;
  std::mutex cache_mutex_;
  std::mutex slot_mutex_;
  std::condition_variable slot_cv_;
  int in_flight_ = 0;
  std::mutex budget_mutex_;
  std::chrono::steady_clock::time_point next_request_{};
  std::atomic<std::size_t> backend_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

// Û = LLM(T, F): renders the annotation prompt and returns the single
// completion with surrounding whitespace and quotes removed.
std::string generate_utterance(Gateway& gateway, const ChatModelSpec& spec, const PromptSet& prompts,
                               const Table& table, const formula::Ast& formula,
                               std::size_t preview_rows = kDefaultPreviewRows);
// Same, showing the model the formula as written rather than its canonical
// rendering.
std::string generate_utterance(Gateway& gateway, const ChatModelSpec& spec, const PromptSet& prompts,
                               const Table& table, std::string_view formula_text,
                               std::size_t preview_rows = kDefaultPreviewRows);

// Removes surrounding whitespace, then one layer of matching quotes.
std::string strip_quotes(std::string_view text);

}  // namespace nl2f::llm
