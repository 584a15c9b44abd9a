#pragma once

#include <stdexcept>
#include <string>

namespace flows {

struct FlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A composite denominator vanished identically.
struct IdenticallySingular : FlowError {
    using FlowError::FlowError;
};

// The computation would need a root outside Q. Carries the offending polynomial as text.
struct NeedsRationalRoot : FlowError {
    std::string poly;
    explicit NeedsRationalRoot(std::string p)
        : FlowError("needs a root outside Q: " + p), poly(std::move(p)) {}
};

struct DegenerateJacobian : FlowError {
    DegenerateJacobian() : FlowError("Jacobian vanishes identically") {}
};

struct NotLevel0Form : FlowError {
    using FlowError::FlowError;
};

struct NoRationalSolution : FlowError {
    using FlowError::FlowError;
};

struct PoleAtDirection : FlowError {
    using FlowError::FlowError;
};

struct ParseError : FlowError {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : FlowError(msg + " at " + std::to_string(l) + ":" + std::to_string(c)), line(l), column(c) {}
};

struct DivisionByZeroPoly : FlowError {
    DivisionByZeroPoly() : FlowError("division by the zero polynomial") {}
};

struct NotDegenerate : FlowError {
    NotDegenerate() : FlowError("the flow satisfies the boundary condition") {}
};

struct NotAFlow : FlowError {
    using FlowError::FlowError;
};

// Internal: a computed conjugator failed its final check.
struct VerificationFailed : FlowError {
    using FlowError::FlowError;
};

} // namespace flows
