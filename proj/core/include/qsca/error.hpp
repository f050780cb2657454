#pragma once

#include <stdexcept>
#include <string>

namespace qsca {

enum class ErrorKind {
  ShapeMismatch,
  InvalidShape,
  InvalidDevice,
  UnsupportedGate,
  Parse,
  Layout,
  Connectivity,
  Capacity,
  Size,
  Channel,
  DegenerateTrace,
  DegenerateNorm,
  Arity,
  Ambiguity,
  IncompleteReconstruction,
  Io,
  Format,
};

const char* to_string(ErrorKind kind);

// All domain failures surface as qsca::Error; callers branch on kind().
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class ParseError : public Error {
public:
  ParseError(int line, const std::string& message)
      : Error(ErrorKind::Parse,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  [[nodiscard]] int line() const noexcept { return line_; }

private:
  int line_;
};

} // namespace qsca
