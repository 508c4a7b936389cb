#pragma once

#include <stdexcept>
#include <string>

namespace ccbc {

/// Invalid run or problem parameters (bad body count, non-positive sigma, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration outside the domain of the potential.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two bodies closer than the collision guard.
class CollisionError : public DomainError {
 public:
  CollisionError(int i, int j)
      : DomainError("collision between bodies " + std::to_string(i) + " and " +
                    std::to_string(j)),
        first_(i),
        second_(j) {}

  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }

 private:
  int first_;
  int second_;
};

/// An interval evaluation that cannot decide (e.g. a distance interval containing zero).
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ccbc
