#include "dirac/errors.hpp"

namespace dirac {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::DiscontinuityPoint: return "DiscontinuityPoint";
    case ErrorKind::UnsupportedRegime: return "UnsupportedRegime";
    case ErrorKind::OutsideAdmissibleBand: return "OutsideAdmissibleBand";
    case ErrorKind::UnboundedStateRequest: return "UnboundedStateRequest";
    case ErrorKind::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorKind::DegenerateRoot: return "DegenerateRoot";
    case ErrorKind::DegenerateMomentum: return "DegenerateMomentum";
    case ErrorKind::NotConjugatePair: return "NotConjugatePair";
    case ErrorKind::BrokenPTSymmetry: return "BrokenPTSymmetry";
    case ErrorKind::MismatchedMomentum: return "MismatchedMomentum";
    case ErrorKind::InvalidLevel: return "InvalidLevel";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::NonDecayingExterior: return "NonDecayingExterior";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace dirac
