#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace srot {

enum class ErrorKind {
    DimensionMismatch,
    NoConvergence,
    EigenvalueOnBoundary,
    DispositionViolated,
    GapEmptyOrRankMismatch,
    NotAProjector,
    GraphExtractionFailed,
    ResidualTooLarge,
    DomainError,
    ConfigInvalid,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// harness can record it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace srot
