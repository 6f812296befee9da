#pragma once

#include <stdexcept>
#include <string>

namespace abskernel {

// Malformed instance data: out-of-range indices, tautological clauses, parse errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called on an instance outside its precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An enumeration or expansion cap would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A guarantee that should hold unconditionally was violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace abskernel
