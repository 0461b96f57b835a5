#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schubert {

// Malformed input: bad conditions, mismatched dimensions, wrong file contents.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ShapeError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, std::size_t pivot)
      : std::runtime_error(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

// Two flags fail to meet in the expected dimensions. `index` is 1-based.
class GeneralPositionError : public std::runtime_error {
 public:
  GeneralPositionError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schubert
