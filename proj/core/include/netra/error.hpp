#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netra {

enum class ErrorKind {
    InvalidSample,
    CalibrationArity,
    CalibrationIncomplete,
    Parse,
    Config,
    InvalidDetection,
    Integrity,
    Version,
    Length,
    InvalidField,
    Undefined,
    NotFound,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported as an Error carrying a kind, so
/// callers (the CLI in particular) can map failures onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace netra
