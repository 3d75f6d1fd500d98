#pragma once

#include <stdexcept>
#include <string>

namespace plpf {

// Invalid argument outside an operation's stated domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A quantity that does not exist (infinite moment, divergent integral).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation not defined for the given parameters (e.g. pdf of a degenerate
// fading law, non-integer m where only the integer form exists).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Threshold lies outside the region a sampled window represents faithfully.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation invoked on an object in the wrong state (e.g. marks attached twice).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Iterative numerics failed to reach tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace plpf
