#pragma once

#include <vector>

namespace costress {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2n - 1.
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

// n-point midpoint trapezoid rule on a periodic interval [a, b); exact for
// trigonometric polynomials of degree < n.
Rule1D periodic_trapezoid(int n, double a, double b);

// Neumaier compensated summation; the result depends only on the order of add().
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace costress
