#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavelang {

enum class ErrorCode {
  OutOfRange,
  NotOrdered,
  Reused,
  Crossing,
  NotWpa,
  NotWaveWord,
  MixedKind,
  UnbalancedTyping,
  BoundExceeded,
  StateBudgetExceeded,
  WidthExceeded,
  NotNice,
  NotAccepting,
  NotInR,
  NotDyck,
  NotGDyck,
  UnknownLetter,
  BadArity,
  Parse,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotOrdered: return "NotOrdered";
    case ErrorCode::Reused: return "Reused";
    case ErrorCode::Crossing: return "Crossing";
    case ErrorCode::NotWpa: return "NotWpa";
    case ErrorCode::NotWaveWord: return "NotWaveWord";
    case ErrorCode::MixedKind: return "MixedKind";
    case ErrorCode::UnbalancedTyping: return "UnbalancedTyping";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::StateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorCode::WidthExceeded: return "WidthExceeded";
    case ErrorCode::NotNice: return "NotNice";
    case ErrorCode::NotAccepting: return "NotAccepting";
    case ErrorCode::NotInR: return "NotInR";
    case ErrorCode::NotDyck: return "NotDyck";
    case ErrorCode::NotGDyck: return "NotGDyck";
    case ErrorCode::UnknownLetter: return "UnknownLetter";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

/// Base exception of the library. Every failure carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::Parse, std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace wavelang
