#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nl2f {

// Base for every domain failure the library reports. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Syntax error in a formula; offset is a byte offset into the input text.
class FormulaSyntaxError : public Error {
 public:
  FormulaSyntaxError(std::size_t offset, const std::string& what)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Chat endpoint failure after retries were exhausted (or a non-retryable one).
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int attempts)
      : Error(what + " (after " + std::to_string(attempts) + " attempt" + (attempts == 1 ? "" : "s") + ")"),
        attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

}  // namespace nl2f
