#include <cstdlib>
#include <regex>

#include <httplib.h>

#include "nl2f/error.hpp"
#include "nl2f/llm.hpp"

namespace nl2f::llm {

namespace {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw ConfigError("endpoint is not an http(s) URL: '" + url + "'");
  return {m[1].str(), m[2].matched ? m[2].str() : std::string("/v1/chat/completions")};
}

bool transient_status(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

HttpBackend::HttpBackend(std::chrono::seconds timeout) : timeout_(timeout) {}

std::vector<std::string> HttpBackend::complete(const ChatModelSpec& spec, const std::string& prompt) {
  const Url url = split_url(spec.endpoint);

  httplib::Headers headers;
  if (!spec.credential_env.empty()) {
    const char* key = std::getenv(spec.credential_env.c_str());
    if (!key || !*key) throw ConfigError("environment variable " + spec.credential_env + " is not set");
    headers.emplace("Authorization", std::string("Bearer ") + key);
    headers.emplace("api-key", key);
  }

  nlohmann::json body = {
      {"model", spec.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", spec.temperature},
      {"n", spec.n},
      {"max_tokens", spec.max_tokens},
  };

  httplib::Client client(url.origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  auto res = client.Post(url.path, headers, body.dump(), "application/json");
  if (!res) throw BackendError("request to " + url.origin + " failed: " + httplib::to_string(res.error()), true);
  if (res->status != 200) {
    throw BackendError("endpoint returned HTTP " + std::to_string(res->status), transient_status(res->status));
  }

  std::vector<std::string> out;
  try {
    const auto reply = nlohmann::json::parse(res->body);
    for (const auto& choice : reply.at("choices")) {
      const auto& content = choice.at("message").at("content");
      out.push_back(content.is_string() ? content.get<std::string>() : std::string());
    }
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed chat response: ") + e.what(), false);
  }
  if (out.size() != static_cast<std::size_t>(spec.n)) {
    throw BackendError("endpoint returned " + std::to_string(out.size()) + " choices, expected " +
                           std::to_string(spec.n),
                       false);
  }
  return out;
}

}  // namespace nl2f::llm
