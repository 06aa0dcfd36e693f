#pragma once

#include <stdexcept>
#include <string>

namespace madness {

enum class ErrorKind {
    InvalidCorner,
    InvalidColoring,
    UnknownCube,
    InvalidName,
    NoOrientation,
    InvalidRule,
    TooSmall,
    Validation,
    Configuration,
    Mismatch,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace madness
