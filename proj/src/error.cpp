#include "fqcover/error.hpp"

namespace fqcover {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::CompositeCharacteristic: return "CompositeCharacteristic";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::UnsupportedFieldSize: return "UnsupportedFieldSize";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::CoefficientOutOfRange: return "CoefficientOutOfRange";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NonCoprimeModuli: return "NonCoprimeModuli";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::ExhaustiveLimitExceeded: return "ExhaustiveLimitExceeded";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::ScheduleShapeInvalid: return "ScheduleShapeInvalid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace fqcover
