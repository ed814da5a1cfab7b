#pragma once

#include <complex>

namespace ffpat {

using Complex = std::complex<double>;

/// 1 / (1 - q^{1-z}), the zeta function of the affine line over F_q.
/// Throws PoleAt where q^{1-z} == 1.
Complex zeta_closed(int q, Complex z);

/// Residue at z = 1, which is 1 / ln q.
double zeta_residue(int q);

/// prod over monic irreducibles P with deg P <= B of 1 / (1 - q^{-z deg P}),
/// accumulated in log space from the per-degree prime counts.
Complex euler_truncated(int q, Complex z, int B);

}  // namespace ffpat
