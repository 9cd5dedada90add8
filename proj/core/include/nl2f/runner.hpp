#pragma once

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nl2f/table.hpp"

namespace nl2f {

// Request sent to an external program runner, one JSON object on stdin.
struct RunRequest {
  std::string program;
  Table table;
  int timeout_ms = 10000;
  int memory_mb = 512;
};

struct RunResponse {
  enum class Status { Ok, Error, Timeout };
  Status status = Status::Error;
  std::vector<std::string> column;  // cell strings, when Ok
  std::string error;

  friend bool operator==(const RunResponse&, const RunResponse&) = default;
};

std::string_view to_string(RunResponse::Status status) noexcept;

nlohmann::ordered_json request_to_json(const RunRequest& request);
// Throws Error on a malformed response object.
RunResponse response_from_json(const nlohmann::json& response);

class ProgramRunner {
 public:
  virtual ~ProgramRunner() = default;
  virtual RunResponse run(const RunRequest& request) = 0;
};

// Launches `command` once per request (e.g. "py-runner run"), writes the
// request to its stdin and reads the response from its stdout. At most
// `pool_size` processes run at once. The child is killed if it outlives the
// request timeout plus `grace`.
class SubprocessRunner : public ProgramRunner {
 public:
  SubprocessRunner(std::vector<std::string> command, int pool_size = 2,
                   std::chrono::milliseconds grace = std::chrono::milliseconds(2000));

  RunResponse run(const RunRequest& request) override;

  const std::vector<std::string>& command() const noexcept { return command_; }

 private:
  std::vector<std::string> command_;
  int pool_size_;
  std::chrono::milliseconds grace_;
  std::mutex mutex_;
  std::condition_variable cv_;
  int active_ = 0;
};

// Whitespace split honouring single and double quotes.
std::vector<std::string> split_command(std::string_view command);

}  // namespace nl2f
