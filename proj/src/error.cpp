#include "qwf/error.hpp"

namespace qwf {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::Aliasing: return "Aliasing";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::DegenerateK: return "DegenerateK";
    case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularFisher: return "SingularFisher";
    case ErrorKind::IncompatibleModel: return "IncompatibleModel";
    case ErrorKind::ChargeUnidentifiable: return "ChargeUnidentifiable";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams:
    case ErrorKind::Aliasing:
    case ErrorKind::OutOfWindow:
      return 2;
    case ErrorKind::QuadratureNonConvergence:
    case ErrorKind::NoConvergence:
      return 3;
    default:
      return 4;
  }
}

}  // namespace qwf
