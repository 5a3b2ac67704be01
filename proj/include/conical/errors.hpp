#pragma once

#include <stdexcept>
#include <string>

namespace conical {

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorClass {
    Config,            // malformed input, unsupported request
    Numerical,         // a numerical stage could not produce a trustworthy result
    TheoremViolation,  // a computed object contradicts a proven statement: a solver bug
};

/// Base exception. `kind` is a stable machine-readable identifier such as
/// "ResonantIndicial"; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string kind, const std::string& detail)
        : std::runtime_error(detail), cls_(cls), kind_(std::move(kind)) {}

    ErrorClass error_class() const noexcept { return cls_; }
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorClass cls_;
    std::string kind_;
};

inline Error config_error(std::string kind, const std::string& detail) {
    return Error(ErrorClass::Config, std::move(kind), detail);
}

inline Error numerical_error(std::string kind, const std::string& detail) {
    return Error(ErrorClass::Numerical, std::move(kind), detail);
}

inline Error theorem_violation(std::string kind, const std::string& detail) {
    return Error(ErrorClass::TheoremViolation, std::move(kind), detail);
}

/// Raised by the Frobenius engine when the indicial factor vanishes at step j.
class ResonantIndicial : public Error {
public:
    ResonantIndicial(int step, const std::string& detail)
        : Error(ErrorClass::Numerical, "ResonantIndicial", detail), step_(step) {}
    int step() const noexcept { return step_; }

private:
    int step_;
};

}  // namespace conical
