#pragma once

#include <stdexcept>
#include <string>

namespace elastic {

// Input outside the mathematical domain of an operation (negative sqrt
// argument, corrupted RTT record, non-positive link rate, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A CCA event or RTT sample that cannot have come from a real connection.
class MalformedEvent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Counter mismatch between what was sent and what arrived. Always a bug in
// whoever produced the counters.
class AccountingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InsufficientData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configuration rejected during loading or validation. `key()` names the
// offending entry (dotted path) so diagnostics can point at it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace elastic
