#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bk {

enum class ErrorCode {
    NonPrime,
    NoSuchRoot,
    NotARoot,
    NotSemisimple,
    PoleAtOne,
    InsufficientData,
    TooLarge,
    BadCharacteristic,
    NotNormal,
    NotPGroup,
    BijectionFailure,
    DimMismatch,
    NotSubgroup,
    WindowTooSmall,
    NotStabilized,
    DimensionTooLarge,
    BadParams,
    Schema,
    Internal,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace bk
