#pragma once

#include <stdexcept>
#include <string>

namespace qclust {

/// An operation was called outside its domain (empty element, negative
/// exponent where a nonnegative one is required, out-of-range index).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The parity hypotheses of a multiplication formula do not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structural property the algebra is expected to have did not hold
/// (non-pointed element, non-integral lattice vector, unsolvable correction).
class StructuralViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qclust
