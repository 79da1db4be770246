#pragma once

#include <stdexcept>
#include <string>

namespace exo {

enum class ErrorCode {
    UnknownState,
    UnknownAct,
    MissingTransition,
    UnknownActToken,
    DigitSourceExhausted,
    ProjectionOutOfRange,
    UnrepresentedFormula,
    InconsistentMetadata,
    MismatchedContext,
    InvalidArgument,
    SpecInvalid,
    MissingAgentKind,
};

const char* to_string(ErrorCode code);

/// Library failure. Every throwing operation uses this type; `code()` tells
/// callers which contract was broken.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace exo
