#pragma once

#include <stdexcept>
#include <string>

namespace eltsim {

/// Invalid or unreadable physical configuration. `field()` names the
/// offending key when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A Gaussian integration step with Re(A) <= 0, or a vanishing denominator
/// in the coefficient tables.
class DegenerateError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pointwise evaluation that would overflow double range.
class EvaluationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Collapse onto a measurement branch of zero probability.
class UndefinedCollapse : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input state does not have the shape an operation expects.
class ShapeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eltsim
