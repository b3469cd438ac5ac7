#include "lp/error.hpp"

namespace lp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::BadDim: return "BadDim";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::NotRankOne: return "NotRankOne";
    case ErrorKind::NotProjection: return "NotProjection";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NotUnbiased: return "NotUnbiased";
    case ErrorKind::NotOddPrime: return "NotOddPrime";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NullProjection: return "NullProjection";
    case ErrorKind::NullVector: return "NullVector";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidEffect: return "InvalidEffect";
    case ErrorKind::InvalidPovm: return "InvalidPovm";
    case ErrorKind::BadOperands: return "BadOperands";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace lp
