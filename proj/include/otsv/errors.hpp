#pragma once

#include <stdexcept>
#include <string>

namespace otsv {

// Base for everything this library throws on purpose. Catching otsv::Error at
// the CLI boundary is enough to turn any domain failure into exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Malformed signature or a call that does not match it (unknown name, wrong
// arity, ill-sorted argument).
class SignatureError : public Error {
 public:
  using Error::Error;
};

// Ill-formed Value construction (mixed-kind set, unknown enum tag, ...).
class ValueError : public Error {
 public:
  using Error::Error;
};

// Bounds without a domain for a required sort, empty domains, duplicates.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// Feature invoked on a model configured without it.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Counterexample replay failed structurally (bad file, stale model, digest
// mismatch) as opposed to merely not reproducing the violation.
class ReplayError : public Error {
 public:
  using Error::Error;
};

// Universe enumeration refused because the state count exceeds the limit.
class UniverseRefused : public Error {
 public:
  UniverseRefused(std::string msg, unsigned long long estimate)
      : Error(std::move(msg)), estimate_(estimate) {}
  unsigned long long estimate() const { return estimate_; }

 private:
  unsigned long long estimate_;
};

}  // namespace otsv
