#pragma once

#include <stdexcept>
#include <string>

namespace semfl {

// Failure classes used across the pipeline. The CLI maps them to exit codes:
// usage/config -> 1, data problems (parse/integrity/staleness/argument) -> 2,
// backend-side failures (transport, extraction, protocol) -> 3.
enum class ErrorKind {
  Usage,
  Parse,
  Integrity,
  Staleness,
  Argument,
  Backend,
  Extraction,
  Protocol,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, bool transient = false)
      : std::runtime_error(std::move(message)), kind_(kind), transient_(transient) {}

  ErrorKind kind() const { return kind_; }

  // Transient backend failures (timeouts, throttling) are retried; permanent
  // ones are not.
  bool transient() const { return transient_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Usage:
        return 1;
      case ErrorKind::Parse:
      case ErrorKind::Integrity:
      case ErrorKind::Staleness:
      case ErrorKind::Argument:
        return 2;
      case ErrorKind::Backend:
      case ErrorKind::Extraction:
      case ErrorKind::Protocol:
        return 3;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
  bool transient_;
};

inline Error usage_error(std::string msg) { return Error(ErrorKind::Usage, std::move(msg)); }
inline Error parse_error(std::string msg) { return Error(ErrorKind::Parse, std::move(msg)); }
inline Error integrity_error(std::string msg) { return Error(ErrorKind::Integrity, std::move(msg)); }
inline Error staleness_error(std::string msg) { return Error(ErrorKind::Staleness, std::move(msg)); }
inline Error argument_error(std::string msg) { return Error(ErrorKind::Argument, std::move(msg)); }
inline Error backend_error(std::string msg, bool transient = false) {
  return Error(ErrorKind::Backend, std::move(msg), transient);
}
inline Error extraction_error(std::string msg) { return Error(ErrorKind::Extraction, std::move(msg)); }
inline Error protocol_error(std::string msg) { return Error(ErrorKind::Protocol, std::move(msg)); }

}  // namespace semfl
