#ifndef QLK_ERRORS_HPP
#define QLK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qlk {

// Error taxonomy shared by all modules. `module_name` identifies the
// component that raised the error so CLI messages can attribute failures.
enum class ErrorCode {
  InvalidType,
  NotDeligneSeries,
  ExcludedLevel,
  CriticalLevel,
  TruncationError,
  InsufficientTruncation,
  LogarithmicCase,
  ResonantRoot,
  UnitIdeal,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string module_name, const std::string& what)
      : std::runtime_error("[" + module_name + "] " + what),
        code_(code),
        module_(std::move(module_name)) {}

  ErrorCode code() const { return code_; }
  const std::string& module_name() const { return module_; }

private:
  ErrorCode code_;
  std::string module_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidType: return "InvalidType";
    case ErrorCode::NotDeligneSeries: return "NotDeligneSeries";
    case ErrorCode::ExcludedLevel: return "ExcludedLevel";
    case ErrorCode::CriticalLevel: return "CriticalLevel";
    case ErrorCode::TruncationError: return "TruncationError";
    case ErrorCode::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorCode::LogarithmicCase: return "LogarithmicCase";
    case ErrorCode::ResonantRoot: return "ResonantRoot";
    case ErrorCode::UnitIdeal: return "UnitIdeal";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace qlk

#endif
