#pragma once

#include <stdexcept>
#include <string>

namespace tilo {

// Malformed or unreadable input (files, identifiers).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition or invalid configuration.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Problem too large for an exhaustive routine.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace tilo
