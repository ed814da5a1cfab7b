#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ffpat/divisor.hpp"
#include "ffpat/measure.hpp"
#include "ffpat/zeta.hpp"

namespace ffpat {

/// Even bump supported on [-1, 1] with phi(0) == 1.
struct BumpFn {
  std::string label;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;

  /// exp(-x^2 / (1 - x^2)) on (-1, 1).
  static BumpFn mollifier();
  /// Looks a bump up by label; throws ConfigError for unknown labels.
  static BumpFn by_label(std::string_view label);
};

/// int_{-1}^{1} e^t phi(t) e^{ixt} dt by composite Gauss-Legendre, checked
/// against a rule with twice the panels (QuadratureNonConvergence past 1e-9).
Complex phi_hat(double x, const BumpFn& bump);
/// The same integral by the trapezoid rule on `intervals` steps; the
/// integrand is flat at +-1, so this converges spectrally.
Complex phi_hat_trapezoid(double x, const BumpFn& bump, int intervals = 2048);

struct CphiReport {
  double value = 0;        ///< Re of scheme A
  double scheme_a = 0;     ///< tensor Gauss-Legendre
  double scheme_b = 0;     ///< iterated trapezoid with step halving
  double analytic = 0;     ///< int_0^1 phi'(u)^2 du
  double imag_residue = 0; ///< |Im| of scheme A
  double rel_diff = 0;     ///< |A - B| / A
  double T = 0;            ///< truncation [-T, T]^2 reached by the doubling rule
};

/// (2 pi)^{-2} int int (1+iy)(1+iy')/(2+iy+iy') phi_hat(y) phi_hat(y') dy dy'
/// over [-T, T]^2, T doubled from 40 until the change drops below 1e-8.
/// Throws NonPositiveResult or QuadratureNonConvergence.
CphiReport c_phi_report(const BumpFn& bump);
/// Memoized per bump label.
double c_phi(const BumpFn& bump);

/// sum over M <= d of mu(M) phi(deg M / R).
double lambda_R(const Divisor& d, double R, const BumpFn& bump);
double lambda_R(const Field& F, const Poly& f, double R, const BumpFn& bump);

/// |(F_q[t] / W)^x|; throws ZeroPolynomial.
std::uint64_t phi_K(const Field& F, const Poly& W);
/// Product of the monic irreducibles of degree <= w.
Poly make_W(const Field& F, int w);

struct SieveParams {
  CurveModel curve;
  int k = 1;
  int r = 0;
  double R = 0;
  int w = 0;
  Poly W = Poly::one();
  Poly alpha = Poly::one();
  BumpFn bump;
  double c_phi = 0;
  std::uint64_t phi_K_W = 1;
  double residue = 0;        ///< zeta_residue(q) = 1 / ln q
  double normalization = 0;  ///< nu = normalization * Lambda^2

  const Field& field() const noexcept { return curve.field; }
  nlohmann::json echo() const;
};

/// R defaults to r / (8 n 2^n) with n = q^k; w to floor(log log r).
/// Throws DegenerateR when R <= 1 and AlphaNotCoprime when gcd(alpha, W) != 1
/// or alpha == 0.
SieveParams make_params(const CurveModel& curve, int r, int k, std::optional<int> w_override, const Poly& alpha,
                        const BumpFn& bump, std::optional<double> R_override = std::nullopt);

/// The polynomial W x + alpha g whose divisor feeds Lambda.
Poly twisted_argument(const SieveParams& P, const Poly& x);

/// normalization * Lambda_R(W x + alpha g)^2; InvalidInput if the argument is 0.
double nu_r(const Poly& x, const SieveParams& P);

/// Lambda_R(W x + alpha g) for every x of degree < window, indexed by x's
/// base-q index, by sieving over the squarefree d of degree < R.
std::vector<double> tabulate_lambda(const SieveParams& P, int window);
/// nu_r over the same box.
MeasureTable tabulate_nu(const SieveParams& P, int window);

}  // namespace ffpat
