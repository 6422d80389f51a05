#pragma once

#include <stdexcept>
#include <string>

namespace cmod {

enum class ErrorKind {
    InvalidInput,
    FieldMismatch,
    AmbientMismatch,
    DimensionMismatch,
    GridMismatch,
    BadBar,
    IncompatibleMorphism,
    NotExact,
    TargetNotPModule,
    RangeError,
    NotSubinterval,
    OverlapMismatch,
    DimTooHigh,
    NotSubcomplex,
    ExactnessViolation,
    DegenerateLine,
    OrderViolation,
    TooLarge,
    Misaligned,
    Internal
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::BadBar: return "BadBar";
    case ErrorKind::IncompatibleMorphism: return "IncompatibleMorphism";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::TargetNotPModule: return "TargetNotPModule";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::NotSubinterval: return "NotSubinterval";
    case ErrorKind::OverlapMismatch: return "OverlapMismatch";
    case ErrorKind::DimTooHigh: return "DimTooHigh";
    case ErrorKind::NotSubcomplex: return "NotSubcomplex";
    case ErrorKind::ExactnessViolation: return "ExactnessViolation";
    case ErrorKind::DegenerateLine: return "DegenerateLine";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Misaligned: return "Misaligned";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

// Internal and ExactnessViolation signal a broken invariant; the rest are caller errors.
inline bool is_internal(ErrorKind k) {
    return k == ErrorKind::Internal || k == ErrorKind::ExactnessViolation;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

} // namespace cmod
