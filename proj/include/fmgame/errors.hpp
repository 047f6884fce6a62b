#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fmgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters violate the standing assumptions; carries the violated names.
class InvalidParams : public Error {
 public:
  explicit InvalidParams(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// A closed form was evaluated outside its domain (non-positive denominator).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two routes to the same quantity disagree. Always a transcription bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fmgame
