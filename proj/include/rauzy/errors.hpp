#pragma once

#include <stdexcept>
#include <string>

namespace rauzy {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mixing scalars from different quadratic fields.
struct ContextError : Error {
    explicit ContextError(const std::string& msg) : Error(msg) {}
};

// Point outside the domain of an IET or sub-interval.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// lambda_n == lambda_m (or the left analogue): induction undefined.
struct TieError : Error {
    int step_index;  // 1-based step at which the tie occurred; 0 if standalone
    explicit TieError(const std::string& msg, int step = 0)
        : Error(msg), step_index(step) {}
};

// Orbit iteration exceeded the configured cap.
struct ReturnOverflow : Error {
    explicit ReturnOverflow(const std::string& msg) : Error(msg) {}
};

struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& msg) : Error(msg) {}
};

// Input to recovery is not a plausible visitation product.
struct InvalidProduct : Error {
    explicit InvalidProduct(const std::string& msg) : Error(msg) {}
};

// An internal exact identity failed; indicates a bug or a broken precondition.
struct ContractViolation : Error {
    explicit ContractViolation(const std::string& msg) : Error(msg) {}
};

}  // namespace rauzy
