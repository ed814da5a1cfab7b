#pragma once

#include <functional>
#include <vector>

namespace ffpat::quad {

/// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> x, w;
};

/// n-point Gauss-Legendre rule; n is one of 10, 20, 30.
const Rule& gauss_legendre(int n);

/// Composite rule over `panels` equal panels of [a, b]. The integrand may
/// return any type supporting += and scaling by double.
template <class F>
auto composite(F&& f, double a, double b, int panels, const Rule& rule) {
  using R = decltype(f(a));
  R sum{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    R part{};
    for (std::size_t i = 0; i < rule.x.size(); ++i) part += f(mid + 0.5 * h * rule.x[i]) * rule.w[i];
    sum += part * (0.5 * h);
  }
  return sum;
}

/// Trapezoid rule with n intervals on [a, b].
template <class F>
auto trapezoid(F&& f, double a, double b, int n) {
  using R = decltype(f(a));
  const double h = (b - a) / n;
  R sum = (f(a) + f(b)) * 0.5;
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  return sum * h;
}

/// Adaptive Gauss-Kronrod (61 points) to relative tolerance `tol`;
/// `error` receives the estimate.
double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol, double* error = nullptr);

}  // namespace ffpat::quad
