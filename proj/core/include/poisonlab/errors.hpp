#pragma once

#include <stdexcept>
#include <string>

namespace poisonlab {

// Points, hypotheses, samples or bias vectors that do not share a domain.
class DomainMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A brute-force enumeration would exceed its configured cap.
class EnumerationTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A poisoning scheme or hard distribution could not be built.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An adversary returned a sample outside its Hamming ball.
class BudgetViolationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace poisonlab
