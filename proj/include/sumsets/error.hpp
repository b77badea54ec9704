#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumsets {

enum class ErrorKind {
    NotPrime,
    InvalidResidue,
    InvalidLength,
    ModulusMismatch,
    EmptyInput,
    DomainError,
    TooLarge,
    Overflow,
    InvalidRegime,
    CNotFree,
    TooManyFree,
    OutOfRegion,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::InvalidResidue: return "InvalidResidue";
        case ErrorKind::InvalidLength: return "InvalidLength";
        case ErrorKind::ModulusMismatch: return "ModulusMismatch";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::InvalidRegime: return "InvalidRegime";
        case ErrorKind::CNotFree: return "CNotFree";
        case ErrorKind::TooManyFree: return "TooManyFree";
        case ErrorKind::OutOfRegion: return "OutOfRegion";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace sumsets
