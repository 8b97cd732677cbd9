#pragma once

#include <stdexcept>
#include <string>

namespace usvar {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based; 0 when the error is not tied to a line.
struct ParseError : Error {
  std::size_t line = 0;
  explicit ParseError(const std::string& msg, std::size_t line_no = 0)
      : Error(line_no ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

struct ArgumentError : Error {
  using Error::Error;
};

// A prompt template placeholder could not be resolved or resolved to nothing.
struct RenderError : Error {
  std::string placeholder;
  RenderError(const std::string& msg, std::string ph)
      : Error(msg), placeholder(std::move(ph)) {}
};

struct ConfigError : Error {
  using Error::Error;
};

struct TransportError : Error {
  bool retriable = false;
  TransportError(const std::string& msg, bool can_retry)
      : Error(msg), retriable(can_retry) {}
};

// Replay rendered a prompt that differs from the recorded one.
struct ReplayDivergenceError : Error {
  using Error::Error;
};

struct SessionError : Error {
  using Error::Error;
};

}  // namespace usvar
