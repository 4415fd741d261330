#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gensample {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formula DSL syntax error; position is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Invalid kernel, mixture, hypergraph or formula data.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A parameter context lacks data an evaluation needs.
class ContextError : public Error {
 public:
  using Error::Error;
};

/// Exact enumeration would exceed the state-count guard.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace gensample
