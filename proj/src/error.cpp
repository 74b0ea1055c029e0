#include "bk/error.hpp"

namespace bk {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPrime: return "NonPrime";
        case ErrorCode::NoSuchRoot: return "NoSuchRoot";
        case ErrorCode::NotARoot: return "NotARoot";
        case ErrorCode::NotSemisimple: return "NotSemisimple";
        case ErrorCode::PoleAtOne: return "PoleAtOne";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::BadCharacteristic: return "BadCharacteristic";
        case ErrorCode::NotNormal: return "NotNormal";
        case ErrorCode::NotPGroup: return "NotPGroup";
        case ErrorCode::BijectionFailure: return "BijectionFailure";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::NotSubgroup: return "NotSubgroup";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
        case ErrorCode::NotStabilized: return "NotStabilized";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::Schema: return "Schema";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace bk
