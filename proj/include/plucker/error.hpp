#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace plucker {

// Bad parameters or malformed input (CLI exit code 1).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation undefined for the given value, e.g. inverting zero (exit code 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A sweep or enumeration would exceed the configured budget (exit code 2).
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(what), required_(required), budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace plucker
