#include "ssg/errors.hpp"

namespace ssg {

const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::EqualPrimes: return "EqualPrimes";
    case ErrorCode::WrongGroupStructure: return "WrongGroupStructure";
    case ErrorCode::BadKernelOrder: return "BadKernelOrder";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::OverfullVertex: return "OverfullVertex";
    case ErrorCode::BadDegree: return "BadDegree";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::CongruenceFailure: return "CongruenceFailure";
    case ErrorCode::UnknownLevel: return "UnknownLevel";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::ExactDivisionFailure: return "ExactDivisionFailure";
    case ErrorCode::CuspInput: return "CuspInput";
    case ErrorCode::SmallLevel: return "SmallLevel";
    case ErrorCode::MissingClassNumber: return "MissingClassNumber";
    case ErrorCode::InconsistentTable: return "InconsistentTable";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::NonIntegralSolution: return "NonIntegralSolution";
    case ErrorCode::GonalityUnknown: return "GonalityUnknown";
    case ErrorCode::MissingData: return "MissingData";
    case ErrorCode::StrategyMismatch: return "StrategyMismatch";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    }
    return "Unknown";
}

}  // namespace ssg
