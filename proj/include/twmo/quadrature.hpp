#pragma once

#include <vector>

namespace twmo::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [-1, 1].
const Rule& gauss_legendre(int n);

/// Nodes and weights of `panels` equal Gauss–Legendre panels of `order` points on [a, b].
Rule composite(double a, double b, int panels, int order = 20);

template <class F>
double integrate(F&& f, double a, double b, int panels, int order = 20) {
  const Rule& r = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += r.weights[i] * f(mid + 0.5 * h * r.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace twmo::quad
