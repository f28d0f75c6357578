#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torsion {

enum class ErrorKind {
    BudgetExceeded,
    SingularCurve,
    UnsupportedPrime,
    NotOrdinary,
    ZeroInput,
    DegenerateField,
    ExhaustedSearch,
    PrecisionMismatch,
    PrecisionLoss,
    PrimeMismatch,
    InsufficientProfile,
    AdditiveUnresolved,
    UnresolvedProfile,
    UnknownCMStatus,
    DescriptorInsufficient,
    SamePrime,
    InvalidCertificate,
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures additionally report the 0-based character offset.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorKind::ParseError, what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace torsion
