#pragma once

#include <filesystem>
#include <string>

#include "netra/error.hpp"

namespace netra::test {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(NETRA_FIXTURE_DIR) / name;
}

/// Runs `fn` and returns the ErrorKind it threw, or nullopt.
template <typename Fn>
std::optional<ErrorKind> error_kind(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

}  // namespace netra::test
