#include <fstream>

#include "nl2f/error.hpp"
#include "nl2f/hashing.hpp"
#include "nl2f/llm.hpp"

namespace nl2f::llm {

void ChatModelSpec::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1 (got " + std::to_string(n) + ")");
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ConfigError("temperature must be within [0, 2] (got " + std::to_string(temperature) + ")");
  }
  if (max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
  if (model.empty()) throw ConfigError("model name is empty");
  if (endpoint.empty()) throw ConfigError("endpoint is empty");
}

MockBackend::MockBackend(std::map<std::string, std::vector<std::string>> script) : script_(std::move(script)) {}

MockBackend MockBackend::from_json(const nlohmann::json& script) {
  if (!script.is_object()) throw ConfigError("mock script must be a JSON object");
  std::map<std::string, std::vector<std::string>> entries;
  for (const auto& [key, value] : script.items()) {
    if (value.is_string()) {
      entries[key] = {value.get<std::string>()};
      continue;
    }
    if (!value.is_array()) throw ConfigError("mock script entry '" + key + "' must be a string or array of strings");
    std::vector<std::string> completions;
    for (const auto& c : value) {
      if (!c.is_string()) throw ConfigError("mock script entry '" + key + "' must contain strings");
      completions.push_back(c.get<std::string>());
    }
    entries[key] = std::move(completions);
  }
  return MockBackend(std::move(entries));
}

MockBackend MockBackend::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read mock script '" + path.string() + "'");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("mock script '" + path.string() + "': " + e.what());
  }
}

std::vector<std::string> MockBackend::complete(const ChatModelSpec& spec, const std::string& prompt) {
  auto it = script_.find(prompt);
  if (it == script_.end()) it = script_.find(sha256_hex(prompt));
  if (it == script_.end()) {
    throw BackendError("no scripted response for prompt sha256:" + sha256_hex(prompt), false);
  }
  const auto& completions = it->second;
  if (completions.size() < static_cast<std::size_t>(spec.n)) {
    throw BackendError("scripted response has " + std::to_string(completions.size()) + " completions, " +
                           std::to_string(spec.n) + " requested",
                       false);
  }
  return {completions.begin(), completions.begin() + spec.n};
}

}  // namespace nl2f::llm
