#pragma once

#include <stdexcept>
#include <string>

namespace pixelneat {

// Caller broke a documented precondition (wrong input length, out-of-range value).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A genome's enabled connections do not form a DAG.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TerminalStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pixelneat
