#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace slt {

// Jacobian determinant vanished (or fell below a declared bound) at a point.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Gram matrix lost rank during orthonormalization; `index` is the 1-based
// generator that could not be orthonormalized.
class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(const std::string& what, int index)
      : std::runtime_error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class NotPositiveSemidefiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Work estimate exceeded the configured budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Carries every violation found, not just the first.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// An upstream failure inside an ensemble run, tagged with where it happened.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(const std::string& cause, double epsilon, long path_index);
  double epsilon() const noexcept { return epsilon_; }
  long path_index() const noexcept { return path_index_; }

 private:
  double epsilon_;
  long path_index_;
};

}  // namespace slt
