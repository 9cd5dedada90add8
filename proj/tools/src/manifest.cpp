#include "manifest.hpp"

#include "io.hpp"
#include "nl2f/hashing.hpp"

namespace nl2f::cli {

RunManifest::RunManifest(std::vector<std::string> command, const Settings& settings, bool record_timing)
    : command_(std::move(command)),
      config_(settings.to_json()),
      config_hash_(settings.hash()),
      seed_(settings.seed),
      record_timing_(record_timing),
      start_(std::chrono::steady_clock::now()) {}

void RunManifest::input(const std::string& path, const std::string& content) {
  inputs_.push_back({{"path", path}, {"sha256", sha256_hex(content)}, {"bytes", content.size()}});
}

void RunManifest::output(const std::string& path, const std::string& content) {
  outputs_.push_back({{"path", path}, {"sha256", sha256_hex(content)}, {"bytes", content.size()}});
}

void RunManifest::set(const std::string& key, nlohmann::ordered_json value) { extra_[key] = std::move(value); }

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "nl2f";
  j["version"] = NL2F_VERSION;
  j["command"] = command_;
  j["config_hash"] = config_hash_;
  j["config"] = config_;
  j["seed"] = seed_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  for (const auto& item : extra_.items()) j[item.key()] = item.value();
  if (record_timing_) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
    j["timing"] = {{"wall_ms", ms.count()}};
  }
  return j;
}

void RunManifest::write(const std::filesystem::path& path) const { write_output(path.string(), to_json().dump(2) + "\n"); }

}  // namespace nl2f::cli
