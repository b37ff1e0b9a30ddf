#include "netra/error.hpp"

namespace netra {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidSample: return "invalid-sample";
        case ErrorKind::CalibrationArity: return "calibration-arity";
        case ErrorKind::CalibrationIncomplete: return "calibration-incomplete";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Config: return "config";
        case ErrorKind::InvalidDetection: return "invalid-detection";
        case ErrorKind::Integrity: return "integrity";
        case ErrorKind::Version: return "version";
        case ErrorKind::Length: return "length";
        case ErrorKind::InvalidField: return "invalid-field";
        case ErrorKind::Undefined: return "undefined";
        case ErrorKind::NotFound: return "not-found";
    }
    return "unknown";
}

}  // namespace netra
