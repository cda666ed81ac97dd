#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frontlab {

/// Failure categories raised by the numerical modules.
enum class ErrorKind {
    NoConnection,
    NonFiniteState,
    DomainError,
    BracketError,
    ResolutionError,
    ResolventError,
    CFLViolation,
    ConfigError,
    GoldenMismatch,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NoConnection: return "NoConnection";
        case ErrorKind::NonFiniteState: return "NonFiniteState";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::BracketError: return "BracketError";
        case ErrorKind::ResolutionError: return "ResolutionError";
        case ErrorKind::ResolventError: return "ResolventError";
        case ErrorKind::CFLViolation: return "CFLViolation";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::GoldenMismatch: return "GoldenMismatch";
    }
    return "Unknown";
}

/// Exception carrying the failure kind and the module that raised it.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& what)
        : std::runtime_error(what), kind_(kind), module_(std::move(module)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, std::string module, const std::string& what) {
    throw Error(kind, std::move(module), what);
}

}  // namespace detail
}  // namespace frontlab
