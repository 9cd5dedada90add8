#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "settings.hpp"

namespace nl2f::cli {

// Record of one mutating run: enough to replay it against the same cache or
// mock script.
class RunManifest {
 public:
  RunManifest(std::vector<std::string> command, const Settings& settings, bool record_timing);

  void input(const std::string& path, const std::string& content);
  void output(const std::string& path, const std::string& content);
  void set(const std::string& key, nlohmann::ordered_json value);

  nlohmann::ordered_json to_json() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> command_;
  nlohmann::ordered_json config_;
  std::string config_hash_;
  std::uint64_t seed_;
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json outputs_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json extra_ = nlohmann::ordered_json::object();
  bool record_timing_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace nl2f::cli
