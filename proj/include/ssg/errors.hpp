#pragma once

#include <stdexcept>
#include <string>

namespace ssg {

enum class ErrorCode {
    InvalidInput,
    ZeroPolynomial,
    NotSquarefree,
    EqualPrimes,
    WrongGroupStructure,
    BadKernelOrder,
    FieldTooLarge,
    OverfullVertex,
    BadDegree,
    NotMonic,
    CongruenceFailure,
    UnknownLevel,
    ChecksumMismatch,
    ExactDivisionFailure,
    CuspInput,
    SmallLevel,
    MissingClassNumber,
    InconsistentTable,
    NormalizationFailure,
    NonIntegralSolution,
    GonalityUnknown,
    MissingData,
    StrategyMismatch,
    UnsupportedFormat,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ssg
