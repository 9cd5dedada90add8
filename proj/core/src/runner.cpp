#include "nl2f/runner.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>
#include <mutex>

#include "nl2f/error.hpp"
#include "text_util.hpp"

namespace nl2f {

std::string_view to_string(RunResponse::Status status) noexcept {
  switch (status) {
    case RunResponse::Status::Ok: return "ok";
    case RunResponse::Status::Error: return "error";
    case RunResponse::Status::Timeout: return "timeout";
  }
  return "?";
}

nlohmann::ordered_json request_to_json(const RunRequest& request) {
  nlohmann::ordered_json table;
  table["headers"] = request.table.headers();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < request.table.row_count(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (const Column& c : request.table.columns()) row.push_back(display_text(c.cells[r]));
    rows.push_back(std::move(row));
  }
  table["rows"] = std::move(rows);

  nlohmann::ordered_json out;
  out["program"] = request.program;
  out["table"] = std::move(table);
  out["timeout_ms"] = request.timeout_ms;
  out["memory_mb"] = request.memory_mb;
  return out;
}

RunResponse response_from_json(const nlohmann::json& response) {
  if (!response.is_object()) throw Error("runner response is not an object");
  auto status = response.find("status");
  if (status == response.end() || !status->is_string()) throw Error("runner response lacks 'status'");
  RunResponse out;
  const std::string s = status->get<std::string>();
  if (s == "ok") {
    out.status = RunResponse::Status::Ok;
    auto column = response.find("column");
    if (column == response.end() || !column->is_array()) throw Error("runner response lacks 'column'");
    for (const auto& cell : *column) {
      if (cell.is_string()) {
        out.column.push_back(cell.get<std::string>());
      } else if (cell.is_null()) {
        out.column.emplace_back();
      } else {
        out.column.push_back(cell.dump());
      }
    }
  } else if (s == "error") {
    out.status = RunResponse::Status::Error;
  } else if (s == "timeout") {
    out.status = RunResponse::Status::Timeout;
  } else {
    throw Error("runner response has unknown status '" + s + "'");
  }
  if (auto err = response.find("error"); err != response.end() && err->is_string()) out.error = err->get<std::string>();
  if (out.status == RunResponse::Status::Timeout && out.error.empty()) out.error = "timeout";
  return out;
}

std::vector<std::string> split_command(std::string_view command) {
  std::vector<std::string> out;
  std::string cur;
  bool in_token = false;
  char quote = 0;
  for (char c : command) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        cur.push_back(c);
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
      in_token = true;
    } else if (is_space(c)) {
      if (in_token) out.push_back(std::move(cur));
      cur.clear();
      in_token = false;
    } else {
      cur.push_back(c);
      in_token = true;
    }
  }
  if (in_token) out.push_back(std::move(cur));
  return out;
}

namespace {

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    struct sigaction sa {};
    sa.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &sa, nullptr);
  });
}

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe2(fds, O_CLOEXEC) != 0) throw Error(std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  Pipe(const Pipe&) = delete;
  Pipe& operator=(const Pipe&) = delete;
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
};

struct ProcessResult {
  bool timed_out = false;
  int exit_code = -1;
  std::string out;
  std::string err;
};

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input,
                          std::chrono::milliseconds limit) {
  Pipe in, out, err;
  // Built before fork: only async-signal-safe calls are allowed in the child.
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  const pid_t pid = fork();
  if (pid < 0) throw Error(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    setpgid(0, 0);
    dup2(in.fds[0], STDIN_FILENO);
    dup2(out.fds[1], STDOUT_FILENO);
    dup2(err.fds[1], STDERR_FILENO);
    execvp(args[0], args.data());
    const char msg[] = "exec failed\n";
    [[maybe_unused]] auto n = ::write(STDERR_FILENO, msg, sizeof msg - 1);
    _exit(127);
  }
  setpgid(pid, pid);
  in.close_read();
  out.close_write();
  err.close_write();

  ProcessResult result;
  std::size_t written = 0;
  if (input.empty()) in.close_write();
  const auto deadline = std::chrono::steady_clock::now() + limit;
  std::array<char, 8192> buf{};
  bool out_open = true, err_open = true;
  while (out_open || err_open) {
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      result.timed_out = true;
      break;
    }
    std::array<pollfd, 3> pfds{};
    nfds_t count = 0;
    int in_idx = -1, out_idx = -1, err_idx = -1;
    if (in.fds[1] >= 0) {
      pfds[count] = {in.fds[1], POLLOUT, 0};
      in_idx = static_cast<int>(count++);
    }
    if (out_open) {
      pfds[count] = {out.fds[0], POLLIN, 0};
      out_idx = static_cast<int>(count++);
    }
    if (err_open) {
      pfds[count] = {err.fds[0], POLLIN, 0};
      err_idx = static_cast<int>(count++);
    }
    const int ready = poll(pfds.data(), count, static_cast<int>(std::min<long long>(remaining.count(), 1000)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw Error(std::string("poll: ") + std::strerror(errno));
    }
    if (in_idx >= 0 && (pfds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n = ::write(in.fds[1], input.data() + written, input.size() - written);
      if (n > 0) written += static_cast<std::size_t>(n);
      if (n < 0 || written == input.size()) in.close_write();
    }
    auto drain = [&buf](int fd, std::string& sink, bool& open) {
      const ssize_t n = ::read(fd, buf.data(), buf.size());
      if (n > 0) {
        sink.append(buf.data(), static_cast<std::size_t>(n));
      } else if (n == 0 || (errno != EINTR && errno != EAGAIN)) {
        open = false;
      }
    };
    if (out_idx >= 0 && (pfds[out_idx].revents & (POLLIN | POLLHUP | POLLERR))) drain(out.fds[0], result.out, out_open);
    if (err_idx >= 0 && (pfds[err_idx].revents & (POLLIN | POLLHUP | POLLERR))) drain(err.fds[0], result.err, err_open);
  }

  if (result.timed_out) kill(-pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!result.timed_out) {
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  }
  return result;
}

std::string first_line(std::string_view text) {
  text = trim(text);
  return std::string(text.substr(0, text.find('\n')));
}

}  // namespace

SubprocessRunner::SubprocessRunner(std::vector<std::string> command, int pool_size, std::chrono::milliseconds grace)
    : command_(std::move(command)), pool_size_(std::max(pool_size, 1)), grace_(grace) {
  if (command_.empty()) throw ConfigError("runner command is empty");
  ignore_sigpipe_once();
}

RunResponse SubprocessRunner::run(const RunRequest& request) {
  {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [this] { return active_ < pool_size_; });
    ++active_;
  }
  struct Release {
    SubprocessRunner* self;
    ~Release() {
      {
        std::lock_guard lock(self->mutex_);
        --self->active_;
      }
      self->cv_.notify_one();
    }
  } release{this};

  const std::string input = request_to_json(request).dump() + "\n";
  const ProcessResult proc =
      run_process(command_, input, std::chrono::milliseconds(request.timeout_ms) + grace_);
  if (proc.timed_out) return RunResponse{RunResponse::Status::Timeout, {}, "timeout (runner killed)"};
  if (proc.exit_code != 0) {
    return RunResponse{RunResponse::Status::Error, {},
                       "runner protocol failure (exit " + std::to_string(proc.exit_code) + "): " + first_line(proc.err)};
  }
  try {
    return response_from_json(nlohmann::json::parse(proc.out));
  } catch (const std::exception& e) {
    return RunResponse{RunResponse::Status::Error, {}, std::string("malformed runner output: ") + e.what()};
  }
}

}  // namespace nl2f
