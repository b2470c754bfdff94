#pragma once

#include <stdexcept>
#include <string>

namespace knotint {

// Every error raised by the library derives from Error so callers can map
// failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DegenerateCurve : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

class DegenerateAxis : public Error {
 public:
  using Error::Error;
};

// Dominant type of an open chain is the unknot: there is no core.
class TrivialChain : public Error {
 public:
  using Error::Error;
};

// Dominant type is off-catalog.
class UnresolvedType : public Error {
 public:
  using Error::Error;
};

// The closed curve itself classifies as the unknot.
class TrivialCurve : public Error {
 public:
  using Error::Error;
};

class SamplingTimeout : public Error {
 public:
  SamplingTimeout(const std::string& what, std::size_t attempts)
      : Error(what + " after " + std::to_string(attempts) + " attempts"), attempts_(attempts) {}
  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

}  // namespace knotint
