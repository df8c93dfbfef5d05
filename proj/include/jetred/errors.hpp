#ifndef JETRED_ERRORS_HPP
#define JETRED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jetred {

// Mismatched orders, dimensions or variable lists.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input (words, jet lists, files).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the domain where an invariant or action is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// (grad f)^2 >= 0 where a timelike gradient is required.
class NonTimelikeGradient : public DomainError {
 public:
  using DomainError::DomainError;
};

// Vanishing denominator of a special conformal transformation or Moebius map.
class SingularPoint : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace jetred

#endif  // JETRED_ERRORS_HPP
