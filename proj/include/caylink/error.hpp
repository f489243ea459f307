#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace caylink {

enum class ErrorKind {
    TriangleViolation,
    DegenerateBase,
    NotBaseNonEdge,
    NotOneDof,
    NotSupported,
    FourCycleNotFound,
    NotOnePath,
    BudgetExceeded,
    AmbiguousEndpoint,
    TypeMismatch,
    Unrealizable,
    DomainError,
    ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::DegenerateBase: return "DegenerateBase";
    case ErrorKind::NotBaseNonEdge: return "NotBaseNonEdge";
    case ErrorKind::NotOneDof: return "NotOneDof";
    case ErrorKind::NotSupported: return "NotSupported";
    case ErrorKind::FourCycleNotFound: return "FourCycleNotFound";
    case ErrorKind::NotOnePath: return "NotOnePath";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::AmbiguousEndpoint: return "AmbiguousEndpoint";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::Unrealizable: return "Unrealizable";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<int> step = std::nullopt)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), step_(step), message_(message) {}

    ErrorKind kind() const { return kind_; }
    std::optional<int> step() const { return step_; }
    const std::string& message() const { return message_; }

private:
    ErrorKind kind_;
    std::optional<int> step_;
    std::string message_;
};

} // namespace caylink
