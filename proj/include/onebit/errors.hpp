#pragma once

#include <stdexcept>
#include <string>

namespace onebit {

// A simulator or wiring bug: alphabet mismatch, missing encoder, bad activation time.
// Never reported as a coding failure.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A caller broke an operation's precondition (e.g. list decoding a word that is not good).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A received symbol pattern that no valid input could have produced.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exhaustive enumeration refused because the case count exceeds the configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace onebit
