#include "vpscreen/bspline.hpp"
#include "vpscreen/errors.hpp"

#include <algorithm>
#include <cmath>

namespace vpscreen {

BSplineSet::BSplineSet(const std::vector<double> &breaks, int order)
    : m_breaks(breaks), m_k(order) {
  if (order < 2 || breaks.size() < 2)
    throw DomainError("BSplineSet: need order >= 2 and at least two breaks");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1]))
      throw DomainError("BSplineSet: breaks must be strictly increasing");
  m_t.assign(order - 1, breaks.front());
  m_t.insert(m_t.end(), breaks.begin(), breaks.end());
  m_t.insert(m_t.end(), order - 1, breaks.back());
}

int BSplineSet::interval(double x) const {
  // largest mu with t_mu <= x < t_{mu+1}, restricted to non-empty intervals
  const int lo = m_k - 1;
  const int hi = static_cast<int>(m_t.size()) - m_k - 1;
  if (x >= m_t[hi + 1])
    return hi;
  const auto it = std::upper_bound(m_t.begin() + lo, m_t.begin() + hi + 1, x);
  return std::max(lo, static_cast<int>(it - m_t.begin()) - 1);
}

int BSplineSet::evaluate(double x, std::array<std::vector<double>, 3> &out) const {
  const int k = m_k;
  const int mu = interval(x);
  // vals[p] holds the p+1 non-zero splines of order p+1
  std::vector<std::vector<double>> vals(k);
  std::vector<double> left(k), right(k);
  vals[0] = {1.0};
  for (int p = 1; p < k; ++p) {
    left[p] = x - m_t[mu + 1 - p];
    right[p] = m_t[mu + p] - x;
    std::vector<double> n(p + 1, 0.0);
    double saved = 0.0;
    for (int r = 0; r < p; ++r) {
      const double temp = vals[p - 1][r] / (right[r + 1] + left[p - r]);
      n[r] = saved + right[r + 1] * temp;
      saved = left[p - r] * temp;
    }
    n[p] = saved;
    vals[p] = std::move(n);
  }

  // Derivative of the order-p splines from a quantity on order p-1 splines.
  auto differentiate = [&](const std::vector<double> &lower, int p) {
    std::vector<double> d(p, 0.0);
    for (int j = 0; j < p; ++j) {
      const int i = mu - p + 1 + j;
      double v = 0.0;
      if (j - 1 >= 0) {
        const double den = m_t[i + p - 1] - m_t[i];
        if (den > 0.0)
          v += lower[j - 1] / den;
      }
      if (j <= p - 2) {
        const double den = m_t[i + p] - m_t[i + 1];
        if (den > 0.0)
          v -= lower[j] / den;
      }
      d[j] = (p - 1) * v;
    }
    return d;
  };

  out[0] = vals[k - 1];
  out[1] = differentiate(vals[k - 2], k);
  if (k >= 3)
    out[2] = differentiate(differentiate(vals[k - 3], k - 1), k);
  else
    out[2].assign(k, 0.0);
  return mu - k + 1;
}

std::vector<double> exponential_breaks(double r_first, double r_max, int n_intervals) {
  if (!(r_first > 0.0) || !(r_max > r_first) || n_intervals < 2)
    throw DomainError("exponential_breaks: invalid parameters");
  std::vector<double> b{0.0};
  const double ratio = std::pow(r_max / r_first, 1.0 / (n_intervals - 1));
  double r = r_first;
  for (int i = 0; i < n_intervals - 1; ++i) {
    b.push_back(r);
    r *= ratio;
  }
  b.push_back(r_max);
  return b;
}

} // namespace vpscreen
