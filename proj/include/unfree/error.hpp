#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace unfree {

/// 1-based line:column.
struct SourcePos {
  int line = 0;
  int column = 0;

  [[nodiscard]] bool known() const { return line > 0; }
  [[nodiscard]] std::string str() const;
};

/// Base of every error the interpreter raises.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& message, std::optional<SourcePos> pos = std::nullopt);

  [[nodiscard]] const std::string& message() const { return message_; }
  [[nodiscard]] const std::optional<SourcePos>& pos() const { return pos_; }

private:
  std::string message_;
  std::optional<SourcePos> pos_;
};

/// Lexical and parse errors.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& message, SourcePos pos, bool at_end_of_input = false)
      : Error(message, pos), incomplete_(at_end_of_input) {}

  /// True when the input ended inside an unfinished form; a REPL reads
  /// another line instead of reporting.
  [[nodiscard]] bool incomplete() const { return incomplete_; }

private:
  bool incomplete_;
};

/// Errors raised while evaluating or matching.
class RuntimeError : public Error {
public:
  using Error::Error;
};

/// Raised when the user interrupts a long-running evaluation.
class Interrupted : public Error {
public:
  Interrupted() : Error("interrupted") {}
};

} // namespace unfree
