#include "xxxlab/exactmath/errors.hpp"

namespace xxxlab {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonzeroRemainder: return "NonzeroRemainder";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::NotSeparating: return "NotSeparating";
    case ErrorCode::NoKernelElement: return "NoKernelElement";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NoCompanion: return "NoCompanion";
    case ErrorCode::SolverBudgetExceeded: return "SolverBudgetExceeded";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::ClusteringAmbiguous: return "ClusteringAmbiguous";
    case ErrorCode::UnmatchedPair: return "UnmatchedPair";
    case ErrorCode::UnmatchedTuple: return "UnmatchedTuple";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::RankDeficientSampling: return "RankDeficientSampling";
    case ErrorCode::InterpolationDegeneracy: return "InterpolationDegeneracy";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace xxxlab
