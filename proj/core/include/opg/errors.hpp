#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace opg {

/// An input failed a range or consistency rule.  `field()` names the
/// offending field (optionally a dotted key path when raised by the config
/// layer).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, std::string message)
      : std::invalid_argument(field + ": " + message),
        field_(std::move(field)),
        message_(std::move(message)) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

/// An iterative numerical method exhausted its refinement budget.  Carries
/// the best estimate reached and the relative tolerance actually achieved.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, double best_estimate,
                   double achieved_rel_tol)
      : std::runtime_error(message),
        best_estimate_(best_estimate),
        achieved_rel_tol_(achieved_rel_tol) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_rel_tol() const noexcept { return achieved_rel_tol_; }

 private:
  double best_estimate_;
  double achieved_rel_tol_;
};

/// API misuse: an operation was called before its inputs were populated.
class UsageError : public std::logic_error {
  using std::logic_error::logic_error;
};

/// An integer count accumulator would wrap.
class SaturationError : public std::overflow_error {
  using std::overflow_error::overflow_error;
};

}  // namespace opg
