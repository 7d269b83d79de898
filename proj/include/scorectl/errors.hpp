#pragma once

#include <stdexcept>
#include <string>

namespace scorectl {

// Root of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector length, vote length or roster size do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidCandidate : public Error {
 public:
  using Error::Error;
};

// Asked to delete a vote that is not in the election.
class MissingVote : public Error {
 public:
  using Error::Error;
};

// Malformed generator, rule parameters or 3DM instance.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The rule is outside what the requested solver handles.
class UnsupportedRule : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search would exceed its configured limits.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string cap, const std::string& what)
      : Error(what), cap_(std::move(cap)) {}
  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string cap_;
};

// A solver produced something that failed its own check. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace scorectl
