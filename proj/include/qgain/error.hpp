// error.hpp
// Exception type shared by every qgain module.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qgain {

enum class ErrorKind {
    NotSquare,
    NotHermitian,
    NoConvergence,
    NotPositive,
    TraceNotOne,
    SupportLeak,
    GammaOutOfRange,
    NotTracePreserving,
    DimensionMismatch,
    NotDecomposable,
    InconsistentEntries,
    ZeroWeight,
    InternalNumericalError,
    ParseError,
    IoError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::SupportLeak: return "SupportLeak";
    case ErrorKind::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotDecomposable: return "NotDecomposable";
    case ErrorKind::InconsistentEntries: return "InconsistentEntries";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::InternalNumericalError: return "InternalNumericalError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

// The message is prefixed with the kind name, e.g. "NotPositive: eigenvalue -0.0099 < -1e-09".
// `value` carries the offending number when one exists (eigenvalue, residual, gamma).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail, std::optional<double> value = std::nullopt)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
          kind_(kind),
          value_(value) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<double> value() const noexcept { return value_; }

private:
    ErrorKind kind_;
    std::optional<double> value_;
};

} // namespace qgain
