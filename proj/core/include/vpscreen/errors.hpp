#pragma once
#include <stdexcept>
#include <string>

namespace vpscreen {

//! Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

//! Result would over/underflow double precision even in scaled form.
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

//! Green function requested too close to a bound-state pole.
class PoleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! An iterative or refining procedure did not reach its tolerance.
//! Carries the best estimate obtained so far.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string &what, double best_estimate)
      : std::runtime_error(what), m_best(best_estimate) {}
  double best_estimate() const { return m_best; }

private:
  double m_best;
};

} // namespace vpscreen
