#pragma once

#include <stdexcept>
#include <string>

namespace maxface {

/// Caller violated a documented precondition (bad index, bad parameter range).
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The mathematics is undefined at the given input (coincident points,
/// evaluation at a pole, path through a singularity).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// An iterative method failed to produce an answer.
class SolverError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace maxface
