#pragma once
#include <array>
#include <vector>

namespace vpscreen {

//! B-splines of order k (degree k-1) on a clamped knot sequence.
class BSplineSet {
public:
  //! `breaks` are the distinct knots, strictly increasing; the end points get
  //! multiplicity k.
  BSplineSet(const std::vector<double> &breaks, int order);

  int order() const { return m_k; }
  int size() const { return static_cast<int>(m_t.size()) - m_k; }
  const std::vector<double> &knots() const { return m_t; }
  const std::vector<double> &breaks() const { return m_breaks; }

  //! Values and first two derivatives of the k splines that can be non-zero
  //! at x. Returns the index of the first of them; out[d][j] belongs to
  //! spline first + j.
  int evaluate(double x, std::array<std::vector<double>, 3> &out) const;

private:
  int interval(double x) const;
  std::vector<double> m_breaks;
  std::vector<double> m_t;
  int m_k;
};

//! Breaks 0, r_first, ..., r_max with geometric spacing after r_first.
std::vector<double> exponential_breaks(double r_first, double r_max, int n_intervals);

} // namespace vpscreen
