#pragma once

#include <stdexcept>
#include <string>

namespace mwl {

/// A precondition on mathematical input failed (element outside its group,
/// empty set where a nonempty one is required, mismatched value kinds).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested module configuration is not supported; the message names
/// the missing capability.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite set outgrew its size cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed scenario or command-line input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mwl
