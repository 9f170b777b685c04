#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kfa {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Integer result or intermediate would not fit the supported width.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A table could not be allocated.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t requested_bytes)
      : std::runtime_error(what + " (requested " +
                           std::to_string(requested_bytes) + " bytes)"),
        requested_bytes_(requested_bytes) {}

  std::size_t requested_bytes() const noexcept { return requested_bytes_; }

 private:
  std::size_t requested_bytes_;
};

/// Two routes that must agree exactly did not. Indicates a bug, not bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kfa
