#include "ffpat/zeta.hpp"

#include <cmath>

#include "ffpat/error.hpp"
#include "ffpat/irreducible.hpp"

namespace ffpat {

namespace {

// -log(1 - x) without cancellation for small |x|.
Complex neg_log1m(Complex x) {
  if (std::abs(x) < 1e-3) {
    Complex term = x, sum = 0.0;
    for (int n = 1; n <= 8; ++n) {
      sum += term / static_cast<double>(n);
      term *= x;
    }
    return sum;
  }
  return -std::log(1.0 - x);
}

}  // namespace

Complex zeta_closed(int q, Complex z) {
  const Complex w = std::exp((1.0 - z) * std::log(static_cast<double>(q)));
  const Complex den = 1.0 - w;
  // poles sit on Re z = 1 spaced 2 pi / ln q apart; rounding leaves |den| near 1e-16 there
  if (std::abs(den) < 1e-12) throw Error(Errc::PoleAt, "zeta has a pole at this argument");
  return 1.0 / den;
}

double zeta_residue(int q) { return 1.0 / std::log(static_cast<double>(q)); }

Complex euler_truncated(int q, Complex z, int B) {
  if (B < 0) throw Error(Errc::InvalidInput, "truncation degree must be >= 0");
  const double lq = std::log(static_cast<double>(q));
  Complex log_sum = 0.0;
  for (int d = 1; d <= B; ++d) {
    const Complex x = std::exp(-z * (lq * d));
    const double count = static_cast<double>(count_irreducible(q, d));
    log_sum += count * neg_log1m(x);
  }
  return std::exp(log_sum);
}

}  // namespace ffpat
