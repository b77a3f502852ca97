#pragma once

#include <stdexcept>
#include <string>

namespace condtest {

enum class ErrorCode {
  // graph construction / validation
  SelfLoop,
  ParallelEdge,
  AsymmetricAdjacency,
  Disconnected,
  IsolatedVertex,
  // operation preconditions
  EmptySide,
  TooLarge,
  InfeasibleParameters,
  NoConvergence,
  StartOutsideRegion,
  DeltaTooLarge,
  EtaOutOfRange,
  NotSubset,
  // engine / harness
  ProgramPanic,
  BadFlags,
  FileNotFound,
  ValidationFailed,
  HeterogeneousConfigs,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace condtest
