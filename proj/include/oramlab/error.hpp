#pragma once

#include <stdexcept>
#include <string>

namespace oramlab {

// Violations of the ORAM model (parameter ranges, address bounds, stash
// overflow). The CLI maps these to exit code 2.
class ModelViolation : public std::runtime_error {
 public:
  explicit ModelViolation(const std::string& what) : std::runtime_error(what) {}
};

// Malformed trace files and unreadable/unwritable paths. Exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Bad workload/engine spec strings and other caller mistakes. Exit code 1.
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

// Bob's replay could not reproduce Alice's view.
class DecodeError : public std::runtime_error {
 public:
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oramlab
