#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqcover {

enum class ErrorCode {
    CompositeCharacteristic,
    ReducibleModulus,
    UnsupportedFieldSize,
    FieldMismatch,
    SyntaxError,
    CoefficientOutOfRange,
    DivisionByZero,
    NotMonic,
    DegreeZero,
    ZeroPolynomial,
    NonCoprimeModuli,
    EmptySystem,
    ExhaustiveLimitExceeded,
    LevelOutOfRange,
    ScheduleShapeInvalid,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace fqcover
