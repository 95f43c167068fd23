#pragma once

#include <stdexcept>
#include <string>

namespace afrel {

enum class ErrorKind {
  InvalidInput,   // malformed or inconsistent data
  Refused,        // a precondition the algorithm relies on does not hold
  NoConvergence,  // an iterative solver ran out of budget
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void invalid_input(const std::string& what) {
  throw Error(ErrorKind::InvalidInput, what);
}

[[noreturn]] inline void refuse(const std::string& what) { throw Error(ErrorKind::Refused, what); }

[[noreturn]] inline void no_convergence(const std::string& what) {
  throw Error(ErrorKind::NoConvergence, what);
}

}  // namespace afrel
