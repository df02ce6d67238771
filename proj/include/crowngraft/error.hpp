#pragma once

#include <stdexcept>
#include <string>

namespace crowngraft {

// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  Schema,     // malformed input: wrong shape, unknown keys, bad types
  Domain,     // well-formed input that violates a mathematical precondition
  Numerical,  // the numerics did not reach the requested accuracy
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Stable machine-readable name, e.g. "DegenerateTriple".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

[[noreturn]] inline void fail_domain(const std::string& code, const std::string& message) {
  throw Error(ErrorKind::Domain, code, message);
}

[[noreturn]] inline void fail_schema(const std::string& code, const std::string& message) {
  throw Error(ErrorKind::Schema, code, message);
}

[[noreturn]] inline void fail_numerical(const std::string& code, const std::string& message) {
  throw Error(ErrorKind::Numerical, code, message);
}

}  // namespace crowngraft
