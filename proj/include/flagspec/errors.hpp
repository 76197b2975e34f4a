#pragma once

#include <stdexcept>
#include <string>

namespace flagspec {

// Precondition on arguments violated (bad dimension, non-prime q, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured size cap would be exceeded; nothing was attempted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed (e.g. complex roots of a Laplacian block).
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace flagspec
