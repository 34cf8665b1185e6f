#pragma once

#include <stdexcept>
#include <string>

namespace schurkit {

// Stable error codes shared by the library and the CLI exit-code mapping.
enum class Err {
    InvalidFactor,
    InvalidElement,
    InvalidPrime,
    EmptySet,
    NotAHomomorphism,
    NotBijective,
    InvalidPartition,
    MissingIdentityClass,
    NotInverseClosed,
    NotProductClosed,
    NotContainingRegular,
    NotASection,
    HNotSubgroup,
    NotClosed,
    InvalidAlgebraicIso,
    SizeMismatch,
    ConstantMismatch,
    NotASchemeIsomorphism,
    BudgetExceeded,
    PlanInvalid,
    FormulaMismatch,
    NotApplicable,
    ParseError,
    Overflow,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

} // namespace schurkit
