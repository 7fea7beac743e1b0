#pragma once

#include <stdexcept>
#include <string>

namespace qmdisc {

/// Root of every error thrown by the library; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range arguments (bad index, size mismatch, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Arguments are well-formed but the operation is undefined on them,
/// e.g. a linking number of a non-pure braid.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Strands collided or tied in projection; the caller is expected to perturb
/// the projection direction or resample the configuration.
class DegenerateConfiguration : public Error {
 public:
  DegenerateConfiguration(const std::string& what, double event_time)
      : Error(what), event_time_(event_time) {}
  double event_time() const noexcept { return event_time_; }

 private:
  double event_time_;
};

}  // namespace qmdisc
