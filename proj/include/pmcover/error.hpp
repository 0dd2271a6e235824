#pragma once

#include <stdexcept>
#include <string>

namespace pmc {

enum class ErrorKind {
  Parse,           // malformed input file / schema violation
  InvalidInstance, // instance fails validation
  BadArgument,     // parameter constraint violated (e.g. 1 < t < s <= 1/q)
  GuardExceeded,   // a size guard (|Omega| cap, enumeration bound) tripped
  Infeasible,      // no repetition produced a feasible outcome
  Internal,        // should-not-happen (LP infeasible on a valid instance, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pmc
