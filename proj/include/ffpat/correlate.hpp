#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "ffpat/measure.hpp"
#include "ffpat/sieve.hpp"

namespace ffpat {

using Rational = boost::rational<long long>;

/// psi_j(x) = sum_c forms[j][c] x_c, plus shifts[j].
struct LinearSystem {
  int m = 1;
  std::vector<std::vector<Poly>> forms;
  std::vector<Poly> shifts;

  int s() const noexcept { return static_cast<int>(forms.size()); }
  /// Throws InvalidInput on shape errors or coefficients of degree >= k,
  /// DependentForms when a row is zero or two rows are proportional.
  void validate(const Field& F, int k) const;
  /// psi_j(x) + b_j.
  Poly apply(const Field& F, int j, const std::vector<Poly>& x) const;
};

struct CorrelationReport {
  double estimate = 0;
  double stderr_ = 0;
  std::uint64_t terms = 0;
  int window = 0;
  std::string mode;  ///< "exhaustive" or "sampled"
  std::uint64_t seed = 0;
  nlohmann::json params;

  nlohmann::json to_json() const;
};

struct SamplingPlan {
  std::uint64_t samples_per_stratum = 4096;
  std::uint64_t seed = 0x5eed;
};

/// (1 / q^{m window}) sum over x in {deg < window}^m of prod_j nu(psi_j(x) + b_j).
/// Exhaustive while q^{m window} <= budget; beyond that, BudgetExceeded unless
/// `sampling` is given, in which case x_1's top coefficient stratifies a
/// fixed-seed sample.
CorrelationReport cross_correlation(const LinearSystem& sys, const MeasureTable& nu, int window,
                                    std::uint64_t budget = std::uint64_t{1} << 26,
                                    std::optional<SamplingPlan> sampling = std::nullopt, int threads = 1);

/// The shift b'_j seen by the sieve: W b_j + alpha g.
std::vector<Poly> sieve_shifts(const LinearSystem& sys, const SieveParams& P);

/// |{x in (F_q[t]/d)^m : d_j | W psi_j(x) + b'_j for all j}| / (N d)^m with
/// d = lcm(d_j), counted directly. Targets are monic squarefree (1 = none).
Rational omega_local(const LinearSystem& sys, const std::vector<Poly>& targets, const SieveParams& P);

/// omega_local for targets drawn from {1, pi} with pi prime, by linear
/// algebra over F_q[t]/pi: N pi^{-rank} when consistent, else 0.
Rational omega_prime(const LinearSystem& sys, const std::vector<bool>& hit, const Poly& pi, const SieveParams& P);

/// Direct omega_local against the product of its per-prime values.
bool omega_crt_check(const LinearSystem& sys, const std::vector<Poly>& targets, const SieveParams& P);

/// One local factor of F(t, t'): the sum over (e_j, e'_j) in {0,1}^{2s} of
/// (-1)^{|e|+|e'|} omega_pi(e or e') N pi^{-sum(e_j (1+i t_j) + e'_j (1+i t'_j)) / R}.
Complex euler_F_local(const std::vector<double>& t, const std::vector<double>& tp, const LinearSystem& sys,
                      const SieveParams& P, const Poly& pi);
/// Product of local factors over primes of degree <= B.
Complex euler_F(const std::vector<double>& t, const std::vector<double>& tp, const LinearSystem& sys,
                const SieveParams& P, int B);
/// (q^{deg W} / (phi_K(W) R Res))^s prod_j (1+i t_j)(1+i t'_j) / (2+i t_j+i t'_j).
Complex euler_F_target(const std::vector<double>& t, const std::vector<double>& tp, const SieveParams& P);

struct AutoCalibration {
  int q = 0;
  int s = 0;
  double C_fit = 0;
  double C_s = 0;
  nlohmann::json to_json() const;
};

struct AutoReport {
  double lhs = 0;
  double bound = 0;
  bool holds() const { return lhs <= bound; }
};

/// (1 / q^window) sum over deg x < window of prod_i nu(x + y_i); nu must
/// cover the shifted arguments. Throws DegenerateShifts on repeated shifts.
double auto_correlation_lhs(const std::vector<Poly>& y, const MeasureTable& nu, int window);
/// prod over pairs i < j and primes p | (y_i - y_j), p not dividing W, of (1 + C_s / N p).
double auto_correlation_shape(const std::vector<Poly>& y, const SieveParams& P, double C_s);
AutoReport auto_correlation(const std::vector<Poly>& y, const MeasureTable& nu, int window, const SieveParams& P,
                            const AutoCalibration& cal);
/// Chooses C_s on a grid to minimise the mean of bound / lhs over the family,
/// with C_fit the largest lhs / shape ratio, so the family is dominated.
AutoCalibration calibrate_auto(const std::vector<std::vector<Poly>>& family, const MeasureTable& nu, int window,
                               const SieveParams& P);

}  // namespace ffpat
