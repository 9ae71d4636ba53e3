#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fkn {

/// Input outside the mathematical domain of an operation (bad subset,
/// conductor mismatch, undefined root system, ...). The CLI maps it to exit 1.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class ConductorMismatch : public DomainError {
public:
  using DomainError::DomainError;
};

/// The Weyl groupoid fails somewhere along the exploration, so no root
/// system can be attached to the braiding.
class RootSystemUndefined : public DomainError {
public:
  using DomainError::DomainError;
};

/// A computation would exceed its configured size budget. The CLI maps it to exit 2.
class ResourceError : public std::runtime_error {
public:
  ResourceError(const std::string &what, std::uint64_t required, std::uint64_t limit)
      : std::runtime_error(what + " (required " + std::to_string(required) +
                           ", limit " + std::to_string(limit) + ")"),
        required_(required), limit_(limit) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t limit() const { return limit_; }

private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

} // namespace fkn
