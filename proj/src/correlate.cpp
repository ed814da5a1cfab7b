#include "ffpat/correlate.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <random>

#include "ffpat/error.hpp"
#include "ffpat/irreducible.hpp"

namespace ffpat {

void LinearSystem::validate(const Field& F, int k) const {
  if (m < 1 || forms.empty()) throw Error(Errc::InvalidInput, "system needs m >= 1 and at least one form");
  if (shifts.size() != forms.size()) throw Error(Errc::InvalidInput, "one shift per form required");
  for (const auto& row : forms) {
    if (static_cast<int>(row.size()) != m) throw Error(Errc::InvalidInput, "form has the wrong number of coefficients");
    bool nonzero = false;
    for (const auto& c : row) {
      if (c.degree() >= k) throw Error(Errc::InvalidInput, "form coefficient of degree >= k");
      nonzero |= !c.is_zero();
    }
    if (!nonzero) throw Error(Errc::DependentForms, "zero form");
  }
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      bool proportional = true;
      for (int a = 0; a < m && proportional; ++a)
        for (int b = a + 1; b < m && proportional; ++b)
          if (sub(F, mul(F, forms[i][a], forms[j][b]), mul(F, forms[i][b], forms[j][a])) != Poly{}) proportional = false;
      if (proportional) throw Error(Errc::DependentForms, "forms " + std::to_string(i) + " and " + std::to_string(j) + " are proportional");
    }
}

Poly LinearSystem::apply(const Field& F, int j, const std::vector<Poly>& x) const {
  Poly out = shifts[static_cast<std::size_t>(j)];
  for (int c = 0; c < m; ++c) out = add(F, out, mul(F, forms[static_cast<std::size_t>(j)][c], x[static_cast<std::size_t>(c)]));
  return out;
}

nlohmann::json CorrelationReport::to_json() const {
  return {{"estimate", estimate}, {"stderr", stderr_}, {"terms", terms}, {"window", window},
          {"mode", mode},         {"seed", seed},      {"params", params}};
}

namespace {

int max_argument_degree(const LinearSystem& sys, int window) {
  int top = -1;
  for (int j = 0; j < sys.s(); ++j) {
    top = std::max(top, sys.shifts[static_cast<std::size_t>(j)].degree());
    for (const auto& c : sys.forms[static_cast<std::size_t>(j)])
      if (!c.is_zero()) top = std::max(top, c.degree() + window - 1);
  }
  return top;
}

double product_at(const LinearSystem& sys, const MeasureTable& nu, const std::vector<Poly>& x) {
  const Field& F = nu.field();
  double prod = 1.0;
  for (int j = 0; j < sys.s(); ++j) prod *= nu[to_index(F, sys.apply(F, j, x))];
  return prod;
}

}  // namespace

CorrelationReport cross_correlation(const LinearSystem& sys, const MeasureTable& nu, int window, std::uint64_t budget,
                                    std::optional<SamplingPlan> sampling, int threads) {
  const Field& F = nu.field();
  if (window < 0) throw Error(Errc::InvalidInput, "window must be >= 0");
  if (max_argument_degree(sys, window) >= nu.window())
    throw Error(Errc::InvalidInput, "measure table does not cover the shifted arguments");
  const auto q = static_cast<std::uint64_t>(F.q());
  const std::uint64_t per = ipow(q, window);
  CorrelationReport rep;
  rep.window = window;
  rep.params = nu.meta();
  const double log_terms = sys.m * window * std::log2(static_cast<double>(q));
  if (log_terms <= std::log2(static_cast<double>(budget))) {
    const std::uint64_t total = ipow(q, sys.m * window);
    const double sum = deterministic_sum(
        total,
        [&](std::uint64_t i) {
          std::vector<Poly> x(static_cast<std::size_t>(sys.m));
          for (auto& xc : x) {
            xc = from_index(F, i % per);
            i /= per;
          }
          return product_at(sys, nu, x);
        },
        threads);
    rep.estimate = sum / static_cast<double>(total);
    rep.terms = total;
    rep.mode = "exhaustive";
    return rep;
  }
  if (!sampling) throw Error(Errc::BudgetExceeded, "exhaustive sum exceeds the budget; enable sampling");
  if (window < 1) throw Error(Errc::InvalidInput, "sampling needs window >= 1");
  std::mt19937_64 rng(sampling->seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, per - 1);
  const std::uint64_t low = per / q;
  double mean_sum = 0, var_sum = 0;
  for (std::uint64_t stratum = 0; stratum < q; ++stratum) {
    std::vector<double> vals;
    for (std::uint64_t n = 0; n < sampling->samples_per_stratum; ++n) {
      std::vector<Poly> x(static_cast<std::size_t>(sys.m));
      for (int c = 0; c < sys.m; ++c) {
        std::uint64_t idx = pick(rng);
        if (c == 0) idx = stratum * low + idx % low;
        x[static_cast<std::size_t>(c)] = from_index(F, idx);
      }
      vals.push_back(product_at(sys, nu, x));
    }
    const double mean = pairwise_sum(vals.data(), vals.size()) / static_cast<double>(vals.size());
    double ss = 0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    mean_sum += mean;
    var_sum += ss / static_cast<double>(vals.size() - 1) / static_cast<double>(vals.size());
  }
  rep.estimate = mean_sum / static_cast<double>(q);
  rep.stderr_ = std::sqrt(var_sum) / static_cast<double>(q);
  rep.terms = q * sampling->samples_per_stratum;
  rep.mode = "sampled";
  rep.seed = sampling->seed;
  return rep;
}

std::vector<Poly> sieve_shifts(const LinearSystem& sys, const SieveParams& P) {
  const Field& F = P.field();
  std::vector<Poly> out;
  const Poly A = mul(F, P.alpha, P.curve.twist);
  for (const auto& b : sys.shifts) out.push_back(add(F, mul(F, P.W, b), A));
  return out;
}

Rational omega_local(const LinearSystem& sys, const std::vector<Poly>& targets, const SieveParams& P) {
  const Field& F = P.field();
  if (static_cast<int>(targets.size()) != sys.s()) throw Error(Errc::InvalidInput, "one target per form required");
  Poly d = Poly::one();
  for (const auto& t : targets) {
    if (!t.is_monic() || gcd(F, t, derivative(F, t)).degree() > 0)
      throw Error(Errc::InvalidInput, "targets must be monic and squarefree");
    d = lcm(F, d, t);
  }
  const auto q = static_cast<std::uint64_t>(F.q());
  const int D = d.degree();
  if (sys.m * D * std::log2(static_cast<double>(q)) > 26) throw Error(Errc::BudgetExceeded, "omega count too large");
  const std::uint64_t per = ipow(q, D);
  const std::uint64_t total = ipow(q, sys.m * D);
  const auto b = sieve_shifts(sys, P);
  std::vector<std::vector<Poly>> coef(static_cast<std::size_t>(sys.s()));
  for (int j = 0; j < sys.s(); ++j)
    for (const auto& a : sys.forms[static_cast<std::size_t>(j)]) coef[static_cast<std::size_t>(j)].push_back(mul(F, P.W, a));
  long long count = 0;
  std::vector<Poly> x(static_cast<std::size_t>(sys.m));
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t rest = i;
    for (auto& xc : x) {
      xc = from_index(F, rest % per);
      rest /= per;
    }
    bool ok = true;
    for (int j = 0; j < sys.s() && ok; ++j) {
      const Poly& t = targets[static_cast<std::size_t>(j)];
      if (t.degree() == 0) continue;
      Poly v = b[static_cast<std::size_t>(j)];
      for (int c = 0; c < sys.m; ++c) v = add(F, v, mul(F, coef[static_cast<std::size_t>(j)][c], x[static_cast<std::size_t>(c)]));
      ok = mod(F, v, t).is_zero();
    }
    count += ok;
  }
  return Rational(count, static_cast<long long>(total));
}

Rational omega_prime(const LinearSystem& sys, const std::vector<bool>& hit, const Poly& pi, const SieveParams& P) {
  const Field& F = P.field();
  const auto b = sieve_shifts(sys, P);
  // augmented rows over F_q[t]/pi
  std::vector<std::vector<Poly>> rows;
  for (int j = 0; j < sys.s(); ++j) {
    if (!hit[static_cast<std::size_t>(j)]) continue;
    std::vector<Poly> row;
    for (const auto& a : sys.forms[static_cast<std::size_t>(j)]) row.push_back(mod(F, mul(F, P.W, a), pi));
    row.push_back(mod(F, neg(F, b[static_cast<std::size_t>(j)]), pi));
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (int c = 0; c < sys.m && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][static_cast<std::size_t>(c)].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    auto& pr = rows[static_cast<std::size_t>(rank)];
    const Poly inv = *inverse_mod(F, pr[static_cast<std::size_t>(c)], pi);
    for (auto& e : pr) e = mulmod(F, e, inv, pi);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == static_cast<std::size_t>(rank) || rows[i][static_cast<std::size_t>(c)].is_zero()) continue;
      const Poly f = rows[i][static_cast<std::size_t>(c)];
      for (std::size_t e = 0; e < pr.size(); ++e) rows[i][e] = mod(F, sub(F, rows[i][e], mul(F, f, pr[e])), pi);
    }
    ++rank;
  }
  for (std::size_t i = static_cast<std::size_t>(rank); i < rows.size(); ++i)
    if (!rows[i].back().is_zero()) return Rational(0);
  const long long N = static_cast<long long>(ipow(static_cast<std::uint64_t>(F.q()), pi.degree() * rank));
  return Rational(1, N);
}

bool omega_crt_check(const LinearSystem& sys, const std::vector<Poly>& targets, const SieveParams& P) {
  const Field& F = P.field();
  const Rational direct = omega_local(sys, targets, P);
  Poly d = Poly::one();
  for (const auto& t : targets) d = lcm(F, d, t);
  Rational product(1);
  if (d.degree() > 0) {
    for (const auto& [pi, e] : factor(F, d).factors) {
      std::vector<Poly> local;
      for (const auto& t : targets) local.push_back(gcd(F, t, pi));
      product *= omega_local(sys, local, P);
    }
  }
  return direct == product;
}

Complex euler_F_local(const std::vector<double>& t, const std::vector<double>& tp, const LinearSystem& sys,
                      const SieveParams& P, const Poly& pi) {
  const int s = sys.s();
  if (static_cast<int>(t.size()) != s || static_cast<int>(tp.size()) != s)
    throw Error(Errc::InvalidInput, "t and t' need one entry per form");
  const double log_norm = pi.degree() * std::log(static_cast<double>(P.field().q()));
  std::vector<double> omega(std::size_t{1} << s);
  for (unsigned mask = 0; mask < omega.size(); ++mask) {
    std::vector<bool> hit(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) hit[static_cast<std::size_t>(j)] = (mask >> j) & 1;
    const Rational w = omega_prime(sys, hit, pi, P);
    omega[mask] = static_cast<double>(w.numerator()) / static_cast<double>(w.denominator());
  }
  Complex sum = 0;
  for (unsigned e = 0; e < omega.size(); ++e)
    for (unsigned ep = 0; ep < omega.size(); ++ep) {
      if (omega[e | ep] == 0.0) continue;
      Complex expo = 0;
      for (int j = 0; j < s; ++j) {
        if ((e >> j) & 1) expo += Complex(1.0, t[static_cast<std::size_t>(j)]);
        if ((ep >> j) & 1) expo += Complex(1.0, tp[static_cast<std::size_t>(j)]);
      }
      const int sign = (std::popcount(e) + std::popcount(ep)) % 2 ? -1 : 1;
      sum += static_cast<double>(sign) * omega[e | ep] * std::exp(-expo * log_norm / P.R);
    }
  return sum;
}

Complex euler_F(const std::vector<double>& t, const std::vector<double>& tp, const LinearSystem& sys,
                const SieveParams& P, int B) {
  Complex prod = 1.0;
  if (B < 1) return prod;
  IrreducibleSieve sieve(P.field(), B);
  for (int d = 1; d <= B; ++d)
    for (const Poly& pi : sieve.list(d)) prod *= euler_F_local(t, tp, sys, P, pi);
  return prod;
}

Complex euler_F_target(const std::vector<double>& t, const std::vector<double>& tp, const SieveParams& P) {
  const double base = std::pow(static_cast<double>(P.field().q()), P.W.degree()) /
                      (static_cast<double>(P.phi_K_W) * P.R * P.residue);
  Complex out = std::pow(base, static_cast<double>(t.size()));
  for (std::size_t j = 0; j < t.size(); ++j) {
    const Complex a(1.0, t[j]), b(1.0, tp[j]);
    out *= a * b / (a + b);
  }
  return out;
}

nlohmann::json AutoCalibration::to_json() const { return {{"q", q}, {"s", s}, {"C_fit", C_fit}, {"C_s", C_s}}; }

double auto_correlation_lhs(const std::vector<Poly>& y, const MeasureTable& nu, int window) {
  const Field& F = nu.field();
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j)
      if (y[i] == y[j]) throw Error(Errc::DegenerateShifts, "shifts must be pairwise distinct");
  int top = window - 1;
  for (const auto& yi : y) top = std::max(top, yi.degree());
  if (top >= nu.window()) throw Error(Errc::InvalidInput, "measure table does not cover the shifted arguments");
  const std::uint64_t total = ipow(static_cast<std::uint64_t>(F.q()), window);
  if (F.q() == 2) {
    std::vector<std::uint64_t> yi;
    for (const auto& v : y) yi.push_back(to_index(F, v));
    return deterministic_sum(total, [&](std::uint64_t x) {
             double prod = 1.0;
             for (auto v : yi) prod *= nu[x ^ v];
             return prod;
           }) / static_cast<double>(total);
  }
  return deterministic_sum(total, [&](std::uint64_t x) {
           const Poly xp = from_index(F, x);
           double prod = 1.0;
           for (const auto& v : y) prod *= nu[to_index(F, add(F, xp, v))];
           return prod;
         }) / static_cast<double>(total);
}

double auto_correlation_shape(const std::vector<Poly>& y, const SieveParams& P, double C_s) {
  const Field& F = P.field();
  double out = 1.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      const Poly diff = sub(F, y[i], y[j]);
      if (diff.is_zero()) throw Error(Errc::DegenerateShifts, "shifts must be pairwise distinct");
      if (diff.degree() == 0) continue;
      for (const auto& [pi, e] : factor(F, diff).factors) {
        if (divides(F, pi, P.W)) continue;
        out *= 1.0 + C_s / std::pow(static_cast<double>(F.q()), pi.degree());
      }
    }
  return out;
}

AutoReport auto_correlation(const std::vector<Poly>& y, const MeasureTable& nu, int window, const SieveParams& P,
                            const AutoCalibration& cal) {
  AutoReport rep;
  rep.lhs = auto_correlation_lhs(y, nu, window);
  rep.bound = cal.C_fit * auto_correlation_shape(y, P, cal.C_s);
  return rep;
}

AutoCalibration calibrate_auto(const std::vector<std::vector<Poly>>& family, const MeasureTable& nu, int window,
                               const SieveParams& P) {
  if (family.empty()) throw Error(Errc::InvalidInput, "calibration family is empty");
  AutoCalibration best;
  best.q = P.field().q();
  best.s = static_cast<int>(family.front().size());
  std::vector<double> lhs;
  for (const auto& y : family) lhs.push_back(auto_correlation_lhs(y, nu, window));
  double best_slack = INFINITY;
  for (int step = 0; step <= 32; ++step) {
    const double C_s = 0.25 * step;
    std::vector<double> shape;
    double C_fit = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      shape.push_back(auto_correlation_shape(family[i], P, C_s));
      C_fit = std::max(C_fit, lhs[i] / shape.back());
    }
    double slack = 0;
    for (std::size_t i = 0; i < family.size(); ++i) slack += lhs[i] > 0 ? C_fit * shape[i] / lhs[i] : 0.0;
    slack /= static_cast<double>(family.size());
    if (slack < best_slack) {
      best_slack = slack;
      best.C_fit = C_fit * (1 + 1e-12);  // keep the family dominated after rounding
      best.C_s = C_s;
    }
  }
  return best;
}

}  // namespace ffpat
