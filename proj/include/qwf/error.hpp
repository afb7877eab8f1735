#pragma once

#include <stdexcept>
#include <string>

namespace qwf {

enum class ErrorKind {
  InvalidParams,
  Aliasing,
  OutOfWindow,
  DegenerateK,
  QuadratureNonConvergence,
  NoConvergence,
  SingularFisher,
  IncompatibleModel,
  ChargeUnidentifiable,
  SingularJacobian,
};

const char* to_string(ErrorKind kind) noexcept;

// Process exit code used by the CLI: 2 config validation, 3 numerical
// non-convergence, 4 model error.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace qwf
