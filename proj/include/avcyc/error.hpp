#pragma once

#include <stdexcept>
#include <string>

namespace avcyc {

enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  NonMonic,
  WrongDegree,
  NotPrimePower,
  DegenerateLattice,
  NotAnOrderGenerator,
  NotAModule,
  CharpolyMismatch,
  ZeroElement,
  NotADivisor,
  Capability,
  Parse,
  Io,
  Network,
  Refusal,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace avcyc
