#include <fstream>
#include <thread>

#include "nl2f/hashing.hpp"
#include "nl2f/llm.hpp"

namespace nl2f::llm {

Gateway::Gateway(std::shared_ptr<ChatBackend> backend, GatewayOptions options)
    : backend_(std::move(backend)), options_(std::move(options)) {
  if (!backend_) throw ConfigError("gateway needs a backend");
  if (options_.max_attempts < 1) options_.max_attempts = 1;
  if (options_.max_in_flight < 1) options_.max_in_flight = 1;
  if (!options_.sleep) options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (options_.cache_dir) std::filesystem::create_directories(*options_.cache_dir);
}

std::string Gateway::cache_key(const ChatModelSpec& spec, const std::string& prompt) {
  const nlohmann::json key = {spec.model, prompt, spec.temperature, spec.n, spec.max_tokens};
  return sha256_hex(key.dump());
}

std::optional<std::vector<std::string>> Gateway::read_cache(const std::string& key) const {
  if (!options_.cache_dir) return std::nullopt;
  std::ifstream in(*options_.cache_dir / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    const auto entry = nlohmann::json::parse(in);
    return entry.at("completions").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // torn or foreign file: treat as a miss
  }
}

void Gateway::write_cache(const std::string& key, const ChatModelSpec& spec, const std::string& prompt,
                          const std::vector<std::string>& completions) {
  if (!options_.cache_dir) return;
  nlohmann::ordered_json entry;
  entry["model"] = spec.model;
  entry["temperature"] = spec.temperature;
  entry["n"] = spec.n;
  entry["max_tokens"] = spec.max_tokens;
  entry["prompt"] = prompt;
  entry["completions"] = completions;

  std::lock_guard lock(cache_mutex_);
  const auto final_path = *options_.cache_dir / (key + ".json");
  const auto tmp_path = *options_.cache_dir / (key + ".json.tmp");
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache entry '" + tmp_path.string() + "'");
    out << entry.dump(2) << '\n';
  }
  std::filesystem::rename(tmp_path, final_path);
}

void Gateway::acquire_slot() {
  std::unique_lock lock(slot_mutex_);
  slot_cv_.wait(lock, [this] { return in_flight_ < options_.max_in_flight; });
  ++in_flight_;
}

void Gateway::release_slot() {
  {
    std::lock_guard lock(slot_mutex_);
    --in_flight_;
  }
  slot_cv_.notify_one();
}

void Gateway::wait_for_budget() {
  if (options_.requests_per_minute <= 0) return;
  const auto interval = std::chrono::microseconds(60'000'000 / options_.requests_per_minute);
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(budget_mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_request_);
    next_request_ = slot + interval;
  }
  const auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(slot - std::chrono::steady_clock::now());
  if (wait.count() > 0) options_.sleep(wait);
}

std::vector<std::string> Gateway::complete(const ChatModelSpec& spec, const std::string& prompt) {
  spec.validate();
  const std::string key = cache_key(spec, prompt);
  if (auto cached = read_cache(key)) {
    ++cache_hits_;
    return *cached;
  }

  auto backoff = options_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    acquire_slot();
    if (backend_->rate_limited()) wait_for_budget();
    try {
      ++backend_calls_;
      std::vector<std::string> completions = backend_->complete(spec, prompt);
      release_slot();
      write_cache(key, spec, prompt, completions);
      return completions;
    } catch (const BackendError& e) {
      release_slot();
      if (!e.transient() || attempt >= options_.max_attempts) throw TransportError(e.what(), attempt);
    } catch (...) {
      release_slot();
      throw;
    }
    options_.sleep(backoff);
    backoff = std::chrono::milliseconds(static_cast<long long>(static_cast<double>(backoff.count()) *
                                                               options_.backoff_multiplier));
  }
}

}  // namespace nl2f::llm
