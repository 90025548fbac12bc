#pragma once

#include <stdexcept>
#include <string>

namespace dichot {

// Caller supplied something outside an operation's domain (even k, degree
// mismatch, order cap, brute-force budget). The CLI maps these to exit code 2.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class OrderCapExceeded : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

// An internal identity failed (e.g. a sum that must be divisible by |G| was
// not). Always a bug in a computation path; the CLI maps these to exit code 1.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace dichot
