#include "ffpat/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ffpat/error.hpp"

namespace ffpat::quad {

namespace {

template <unsigned N>
Rule expand() {
  using G = boost::math::quadrature::gauss<double, N>;
  Rule r;
  const auto& xs = G::abscissa();
  const auto& ws = G::weights();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(ws[i]);
      continue;
    }
    r.x.push_back(-xs[i]);
    r.w.push_back(ws[i]);
    r.x.push_back(xs[i]);
    r.w.push_back(ws[i]);
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static const Rule r10 = expand<10>();
  static const Rule r20 = expand<20>();
  static const Rule r30 = expand<30>();
  switch (n) {
    case 10: return r10;
    case 20: return r20;
    case 30: return r30;
    default: throw Error(Errc::InvalidInput, "unsupported Gauss-Legendre order");
  }
}

double gauss_kronrod(const std::function<double(double)>& f, double a, double b, double tol, double* error) {
  double err = 0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol, &err);
  if (error) *error = err;
  return v;
}

}  // namespace ffpat::quad
