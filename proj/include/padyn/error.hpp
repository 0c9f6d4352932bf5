#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padyn {

// Failure categories. The CLI maps them onto exit codes 1, 2 and 3.
enum class ErrorKind { Domain, Precision, Verification };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

#define PADYN_DEFINE_ERROR(Type, Kind)                                        \
    class Type : public Error {                                               \
    public:                                                                   \
        explicit Type(const std::string& what) : Error(Kind, #Type, what) {} \
    };

// Domain errors: the input lies outside the set an operation is defined on.
PADYN_DEFINE_ERROR(DomainError, ErrorKind::Domain)
PADYN_DEFINE_ERROR(DivisionByZero, ErrorKind::Domain)
PADYN_DEFINE_ERROR(ZeroInput, ErrorKind::Domain)
PADYN_DEFINE_ERROR(NotASquare, ErrorKind::Domain)
PADYN_DEFINE_ERROR(PoleError, ErrorKind::Domain)
PADYN_DEFINE_ERROR(NotAFixedPoint, ErrorKind::Domain)
PADYN_DEFINE_ERROR(LengthMismatch, ErrorKind::Domain)
PADYN_DEFINE_ERROR(ParseError, ErrorKind::Domain)

// Precision errors: the working precision cannot certify the answer.
PADYN_DEFINE_ERROR(PrecisionExhausted, ErrorKind::Precision)
PADYN_DEFINE_ERROR(NoConvergence, ErrorKind::Precision)
PADYN_DEFINE_ERROR(BranchError, ErrorKind::Precision)
PADYN_DEFINE_ERROR(ZeroPartitionFunction, ErrorKind::Precision)

// Verification errors: a computed object failed its own postcondition.
PADYN_DEFINE_ERROR(VerificationError, ErrorKind::Verification)
PADYN_DEFINE_ERROR(ConsistencyError, ErrorKind::Verification)
PADYN_DEFINE_ERROR(NoValidPlacement, ErrorKind::Verification)

#undef PADYN_DEFINE_ERROR

// Raised by itinerary() at the first iterate that leaves the coding domain.
class EscapeError : public Error {
public:
    explicit EscapeError(std::size_t step)
        : Error(ErrorKind::Domain, "EscapeError",
                "iterate " + std::to_string(step) + " left the coding domain"),
          step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace padyn
