#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "nl2f/nl2f.hpp"

namespace nl2f::cli {

// Effective configuration: defaults, then the --config file, then flags.
struct Settings {
  std::string endpoint = "mock";
  std::string model = "mock";
  std::string credential_env;
  std::string mock_script;
  double temperature = 0.7;  // annotation sampling
  int max_tokens = 512;
  int requests_per_minute = 60;
  int max_in_flight = 4;
  int max_attempts = 5;
  int initial_backoff_ms = 500;
  int workers = 4;
  std::string runner_cmd;
  int runner_timeout_ms = 10000;
  int runner_memory_mb = 512;
  double num_tol = 0.05;
  double str_coef = 0.8;
  bool strict_strings = false;
  std::string lcs_mode = "contiguous";
  int preview_rows = 20;
  std::string deprecated_list;
  std::string prompts_dir;
  std::uint64_t seed = 0;

  // Not part of the hashed configuration: it only changes where responses
  // are stored.
  std::string cache_dir;

  // Throws ConfigError on unknown keys or wrong types.
  void merge(const nlohmann::json& config);
  void validate() const;

  nlohmann::ordered_json to_json() const;
  std::string hash() const;

  llm::ChatModelSpec model_spec() const;
  MatchOptions match_options() const;
  llm::PromptSet prompts() const;
  std::set<std::string> deprecated() const;
  std::unique_ptr<llm::Gateway> make_gateway() const;
  std::unique_ptr<ProgramRunner> make_runner() const;  // null without runner_cmd
};

Settings load_settings_file(const std::filesystem::path& path);

}  // namespace nl2f::cli
