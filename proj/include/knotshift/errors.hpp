#pragma once

#include <stdexcept>
#include <string>

namespace knotshift {

/// Malformed or out-of-range user input (bad file, bad parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation hit a configured cap (order search, brute-force size).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical conclusion that should hold on this input did not.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class HypothesisViolated : public TheoremViolation {
 public:
  using TheoremViolation::TheoremViolation;
};

class NonFreeModule : public TheoremViolation {
 public:
  using TheoremViolation::TheoremViolation;
};

class SingularRestriction : public TheoremViolation {
 public:
  using TheoremViolation::TheoremViolation;
};

/// Broken internal invariant; always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace knotshift
