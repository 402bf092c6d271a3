#pragma once

#include <stdexcept>
#include <string>

namespace dcenter {

// Bad input: malformed specs, out-of-range indices, unreadable files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request whose computation cannot proceed (non-cocycle,
// non-normal subgroup, resource bound exceeded). `certificate` carries a
// human-readable witness when one exists.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what, std::string certificate = {})
      : std::runtime_error(what), certificate_(std::move(certificate)) {}

  const std::string& certificate() const noexcept { return certificate_; }

 private:
  std::string certificate_;
};

}  // namespace dcenter
