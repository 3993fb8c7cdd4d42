#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gtank {

// Invalid parameters or an impossible observation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An enumeration or sampling budget would be exceeded. `required` carries the
// size that was asked for (e.g. C(N, k) for the subset oracle).
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : std::runtime_error(what), required_(required), cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

// A simulation config that pairs an estimator with a geometry it cannot
// consume, or is otherwise inconsistent.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A fixed-point iteration left its domain (negative radicand).
class IterationError : public std::runtime_error {
 public:
  IterationError(const std::string& what, int step) : std::runtime_error(what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace gtank
