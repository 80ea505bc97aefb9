#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qpal {

/// Malformed formula text. `position` is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Invalid model description or misuse of a model (empty domain, bad relation, unknown state).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula cannot be evaluated as asked (quantifier in the epistemic fragment, unknown agent).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exponential engine refused to run because a quotient exceeded the block cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpal
