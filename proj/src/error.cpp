#include "condtest/error.hpp"

namespace condtest {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::ParallelEdge: return "ParallelEdge";
    case ErrorCode::AsymmetricAdjacency: return "AsymmetricAdjacency";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InfeasibleParameters: return "InfeasibleParameters";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StartOutsideRegion: return "StartOutsideRegion";
    case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorCode::EtaOutOfRange: return "EtaOutOfRange";
    case ErrorCode::NotSubset: return "NotSubset";
    case ErrorCode::ProgramPanic: return "ProgramPanic";
    case ErrorCode::BadFlags: return "BadFlags";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::HeterogeneousConfigs: return "HeterogeneousConfigs";
  }
  return "UnknownError";
}

}  // namespace condtest
