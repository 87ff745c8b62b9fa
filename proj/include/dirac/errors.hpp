#pragma once

#include <stdexcept>
#include <string>

namespace dirac {

enum class ErrorKind {
  InvalidArgument,
  SingularPoint,
  DiscontinuityPoint,
  UnsupportedRegime,
  OutsideAdmissibleBand,
  UnboundedStateRequest,
  NotAnEigenvalue,
  DegenerateRoot,
  DegenerateMomentum,
  NotConjugatePair,
  BrokenPTSymmetry,
  MismatchedMomentum,
  InvalidLevel,
  GridTooCoarse,
  NonDecayingExterior,
  ConfigError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dirac
