#include "settings.hpp"

#include <fstream>

namespace nl2f::cli {

namespace {

template <typename T>
void take(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

void Settings::merge(const nlohmann::json& config) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "endpoint", "model", "credential_env", "mock_script", "temperature", "max_tokens",
      "requests_per_minute", "max_in_flight", "max_attempts", "initial_backoff_ms", "workers",
      "runner_cmd", "runner_timeout_ms", "runner_memory_mb", "num_tol", "str_coef",
      "strict_strings", "lcs_mode", "preview_rows", "deprecated_list", "prompts_dir", "seed",
      "cache_dir"};
  for (const auto& item : config.items()) {
    if (!known.count(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");
  }
  take(config, "endpoint", endpoint);
  take(config, "model", model);
  take(config, "credential_env", credential_env);
  take(config, "mock_script", mock_script);
  take(config, "temperature", temperature);
  take(config, "max_tokens", max_tokens);
  take(config, "requests_per_minute", requests_per_minute);
  take(config, "max_in_flight", max_in_flight);
  take(config, "max_attempts", max_attempts);
  take(config, "initial_backoff_ms", initial_backoff_ms);
  take(config, "workers", workers);
  take(config, "runner_cmd", runner_cmd);
  take(config, "runner_timeout_ms", runner_timeout_ms);
  take(config, "runner_memory_mb", runner_memory_mb);
  take(config, "num_tol", num_tol);
  take(config, "str_coef", str_coef);
  take(config, "strict_strings", strict_strings);
  take(config, "lcs_mode", lcs_mode);
  take(config, "preview_rows", preview_rows);
  take(config, "deprecated_list", deprecated_list);
  take(config, "prompts_dir", prompts_dir);
  take(config, "seed", seed);
  take(config, "cache_dir", cache_dir);
}

void Settings::validate() const {
  model_spec().validate();
  if (lcs_mode != "contiguous" && lcs_mode != "subsequence") {
    throw ConfigError("lcs_mode must be 'contiguous' or 'subsequence'");
  }
  if (num_tol < 0) throw ConfigError("num_tol must be >= 0");
  if (str_coef < 0 || str_coef > 1) throw ConfigError("str_coef must be in [0, 1]");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
  if (max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
  if (preview_rows < 1) throw ConfigError("preview_rows must be >= 1");
  if (runner_timeout_ms < 1 || runner_memory_mb < 1) throw ConfigError("runner limits must be positive");
}

nlohmann::ordered_json Settings::to_json() const {
  return {{"endpoint", endpoint},
          {"model", model},
          {"credential_env", credential_env},
          {"mock_script", mock_script},
          {"temperature", temperature},
          {"max_tokens", max_tokens},
          {"requests_per_minute", requests_per_minute},
          {"max_in_flight", max_in_flight},
          {"max_attempts", max_attempts},
          {"initial_backoff_ms", initial_backoff_ms},
          {"workers", workers},
          {"runner_cmd", runner_cmd},
          {"runner_timeout_ms", runner_timeout_ms},
          {"runner_memory_mb", runner_memory_mb},
          {"num_tol", num_tol},
          {"str_coef", str_coef},
          {"strict_strings", strict_strings},
          {"lcs_mode", lcs_mode},
          {"preview_rows", preview_rows},
          {"deprecated_list", deprecated_list},
          {"prompts_dir", prompts_dir},
          {"seed", seed}};
}

std::string Settings::hash() const { return sha256_hex(to_json().dump()); }

llm::ChatModelSpec Settings::model_spec() const {
  llm::ChatModelSpec spec;
  spec.endpoint = endpoint;
  spec.model = model;
  spec.temperature = temperature;
  spec.max_tokens = max_tokens;
  spec.credential_env = credential_env;
  return spec;
}

MatchOptions Settings::match_options() const {
  MatchOptions m;
  m.numeric_tolerance = num_tol;
  m.string_coefficient = str_coef;
  m.strict_strings = strict_strings;
  m.metric = lcs_mode == "subsequence" ? StringMetric::Subsequence : StringMetric::ContiguousSubstring;
  return m;
}

llm::PromptSet Settings::prompts() const {
  return prompts_dir.empty() ? llm::PromptSet::defaults() : llm::PromptSet::load(prompts_dir);
}

std::set<std::string> Settings::deprecated() const {
  return deprecated_list.empty() ? formula::default_deprecated_functions()
                                 : formula::load_function_list(deprecated_list);
}

std::unique_ptr<llm::Gateway> Settings::make_gateway() const {
  std::shared_ptr<llm::ChatBackend> backend;
  if (endpoint == "mock") {
    if (mock_script.empty()) throw ConfigError("endpoint 'mock' needs --mock-script");
    backend = std::make_shared<llm::MockBackend>(llm::MockBackend::from_file(mock_script));
  } else {
    backend = std::make_shared<llm::HttpBackend>();
  }
  llm::GatewayOptions o;
  if (!cache_dir.empty()) o.cache_dir = cache_dir;
  o.max_attempts = max_attempts;
  o.initial_backoff = std::chrono::milliseconds(initial_backoff_ms);
  o.max_in_flight = max_in_flight;
  o.requests_per_minute = requests_per_minute;
  return std::make_unique<llm::Gateway>(std::move(backend), std::move(o));
}

std::unique_ptr<ProgramRunner> Settings::make_runner() const {
  if (runner_cmd.empty()) return nullptr;
  auto argv = split_command(runner_cmd);
  if (argv.empty()) throw ConfigError("runner command is empty");
  return std::make_unique<SubprocessRunner>(std::move(argv), std::max(1, workers));
}

Settings load_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  Settings s;
  s.merge(j);
  return s;
}

}  // namespace nl2f::cli
