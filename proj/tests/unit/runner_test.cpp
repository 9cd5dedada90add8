#include <gtest/gtest.h>

#include <chrono>

#include "support.hpp"

using namespace nl2f;
using nl2f::test::make_table;

namespace {

RunRequest request(std::string program, int timeout_ms = 5000) {
  RunRequest r{std::move(program), make_table({{"A", {"1", "2"}}, {"B", {"3", "4"}}})};
  r.timeout_ms = timeout_ms;
  return r;
}

const char* kSumProgram = "def derive(t):\n    return [a + b for a, b in zip(t[\"A\"], t[\"B\"])]\n";

#define REQUIRE_RUNNER()                                              \
  if (!nl2f::test::runner_available()) GTEST_SKIP() << "no runner command configured"

}  // namespace

TEST(RunnerProtocol, RequestShape) {
  RunRequest r = request("x");
  r.table = make_table({{"A", {"1.5", ""}}, {"S", {"TRUE", "a"}}});
  const auto j = request_to_json(r);
  EXPECT_EQ(j.dump(),
            R"({"program":"x","table":{"headers":["A","S"],"rows":[["1.5","TRUE"],["","a"]]},"timeout_ms":5000,"memory_mb":512})");
}

TEST(RunnerProtocol, ResponseParsing) {
  auto ok = response_from_json(nlohmann::json::parse(R"({"status":"ok","column":["4",null,6]})"));
  EXPECT_EQ(ok.status, RunResponse::Status::Ok);
  EXPECT_EQ(ok.column, (std::vector<std::string>{"4", "", "6"}));
  auto err = response_from_json(nlohmann::json::parse(R"({"status":"error","error":"boom"})"));
  EXPECT_EQ(err.status, RunResponse::Status::Error);
  EXPECT_EQ(err.error, "boom");
  EXPECT_EQ(response_from_json(nlohmann::json::parse(R"({"status":"timeout"})")).status,
            RunResponse::Status::Timeout);
  EXPECT_THROW(response_from_json(nlohmann::json::parse(R"({"status":"ok"})")), Error);
  EXPECT_THROW(response_from_json(nlohmann::json::parse(R"({"status":"weird"})")), Error);
  EXPECT_THROW(response_from_json(nlohmann::json::parse(R"([1])")), Error);
}

TEST(RunnerProtocol, SplitCommand) {
  EXPECT_EQ(split_command("python3 -m runner run"), (std::vector<std::string>{"python3", "-m", "runner", "run"}));
  EXPECT_EQ(split_command("'/opt/my dir/py' \"a b\"  c"), (std::vector<std::string>{"/opt/my dir/py", "a b", "c"}));
  EXPECT_TRUE(split_command("   ").empty());
}

TEST(SubprocessRunner, OracleProgram) {
  REQUIRE_RUNNER();
  SubprocessRunner runner(nl2f::test::runner_command());
  const auto r = runner.run(request(kSumProgram));
  ASSERT_EQ(r.status, RunResponse::Status::Ok) << r.error;
  EXPECT_EQ(r.column, (std::vector<std::string>{"4", "6"}));
}

TEST(SubprocessRunner, ProgramErrors) {
  REQUIRE_RUNNER();
  SubprocessRunner runner(nl2f::test::runner_command());
  auto r = runner.run(request("x = 1\n"));
  EXPECT_EQ(r.status, RunResponse::Status::Error);
  EXPECT_EQ(r.error, "entrypoint not found");
  r = runner.run(request("def derive(t):\n    raise ValueError('bad input')\n"));
  EXPECT_EQ(r.status, RunResponse::Status::Error);
  EXPECT_NE(r.error.find("bad input"), std::string::npos);
}

TEST(SubprocessRunner, HangThenRecover) {
  REQUIRE_RUNNER();
  SubprocessRunner runner(nl2f::test::runner_command(), 1, std::chrono::milliseconds(1000));
  const auto start = std::chrono::steady_clock::now();
  const auto hang = runner.run(request("def derive(t):\n    while True:\n        pass\n", 500));
  EXPECT_EQ(hang.status, RunResponse::Status::Timeout);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(1500 + 1000));
  const auto next = runner.run(request(kSumProgram));
  EXPECT_EQ(next.status, RunResponse::Status::Ok);
}

TEST(SubprocessRunner, KillsUncooperativeProcess) {
  SubprocessRunner runner({"/bin/sh", "-c", "sleep 30"}, 1, std::chrono::milliseconds(200));
  const auto start = std::chrono::steady_clock::now();
  const auto r = runner.run(request("", 100));
  EXPECT_EQ(r.status, RunResponse::Status::Timeout);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(3));
}

TEST(SubprocessRunner, ProtocolFailures) {
  SubprocessRunner bad_exit({"/bin/sh", "-c", "echo oops >&2; exit 3"});
  auto r = bad_exit.run(request(""));
  EXPECT_EQ(r.status, RunResponse::Status::Error);
  EXPECT_NE(r.error.find("exit 3"), std::string::npos);
  EXPECT_NE(r.error.find("oops"), std::string::npos);

  SubprocessRunner garbage({"/bin/sh", "-c", "cat >/dev/null; echo not-json"});
  r = garbage.run(request(""));
  EXPECT_EQ(r.status, RunResponse::Status::Error);
  EXPECT_NE(r.error.find("malformed runner output"), std::string::npos);

  SubprocessRunner missing({"/nonexistent/runner-binary"});
  r = missing.run(request(""));
  EXPECT_EQ(r.status, RunResponse::Status::Error);
}

TEST(SubprocessRunner, EchoesRequestThroughCat) {
  SubprocessRunner echo({"/bin/sh", "-c", "cat >/dev/null; printf '{\"status\":\"ok\",\"column\":[\"a\",\"b\"]}'"});
  const auto r = echo.run(request(""));
  EXPECT_EQ(r.status, RunResponse::Status::Ok);
  EXPECT_EQ(r.column, (std::vector<std::string>{"a", "b"}));
}

TEST(SubprocessRunner, Deterministic) {
  REQUIRE_RUNNER();
  SubprocessRunner runner(nl2f::test::runner_command());
  const auto a = runner.run(request(kSumProgram));
  const auto b = runner.run(request(kSumProgram));
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.column, b.column);
}

TEST(SubprocessRunner, EmptyCommandRejected) { EXPECT_THROW(SubprocessRunner({}), ConfigError); }
