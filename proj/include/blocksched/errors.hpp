#pragma once

#include <stdexcept>
#include <string>

namespace bsched {

// Malformed input: bad JSON, wrong environment, out-of-range ids.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotABlockGraph : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidAssignment : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// No schedule exists (e.g. a block larger than the machine count).
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  enum class Kind { Time, Memory };
  BudgetExceeded(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace bsched
