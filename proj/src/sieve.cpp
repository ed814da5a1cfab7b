#include "ffpat/sieve.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ffpat/error.hpp"
#include "ffpat/irreducible.hpp"
#include "ffpat/quadrature.hpp"
#include "walker.hpp"

namespace ffpat {

BumpFn BumpFn::mollifier() {
  BumpFn b;
  b.label = "mollifier";
  b.phi = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return std::exp(-x * x / u);
  };
  b.dphi = [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    const double u = 1.0 - x * x;
    return std::exp(-x * x / u) * (-2.0 * x / (u * u));
  };
  return b;
}

BumpFn BumpFn::by_label(std::string_view label) {
  if (label == "mollifier") return mollifier();
  throw Error(Errc::ConfigError, "unknown bump label '" + std::string(label) + "'");
}

namespace {

Complex phi_hat_gl(double x, const BumpFn& bump, int panels) {
  const auto& rule = quad::gauss_legendre(10);
  return quad::composite(
      [&](double t) {
        const double g = std::exp(t) * bump.phi(t);
        return Complex(g * std::cos(x * t), g * std::sin(x * t));
      },
      -1.0, 1.0, panels, rule);
}

int panels_for(double x) { return 16 + static_cast<int>(std::ceil(std::abs(x) / 2.0)); }

}  // namespace

Complex phi_hat(double x, const BumpFn& bump) {
  const int n = panels_for(x);
  const Complex coarse = phi_hat_gl(x, bump, n);
  const Complex fine = phi_hat_gl(x, bump, 2 * n);
  if (std::abs(fine - coarse) > 1e-9) throw Error(Errc::QuadratureNonConvergence, "phi_hat refinement levels disagree");
  return fine;
}

Complex phi_hat_trapezoid(double x, const BumpFn& bump, int intervals) {
  return quad::trapezoid(
      [&](double t) {
        const double g = std::exp(t) * bump.phi(t);
        return Complex(g * std::cos(x * t), g * std::sin(x * t));
      },
      -1.0, 1.0, intervals);
}

namespace {

constexpr double kTailTol = 1e-8;
constexpr double kStepTol = 1e-10;
constexpr double kStartT = 40.0;
constexpr double kMaxT = 10240.0;

// 1 / (2 + i s)
Complex kernel(double s) { return Complex(2.0, -s) / (4.0 + s * s); }

// Tensor Gauss-Legendre over panels of width 2 covering [-T, T]^2.
Complex scheme_tensor(const BumpFn& bump, double* T_out) {
  const auto& rule = quad::gauss_legendre(10);
  std::map<int, std::vector<Complex>> cache;  // panel -> weighted (1+iy) phi_hat(y)
  std::map<int, std::vector<double>> nodes;
  auto panel = [&](int p) -> std::pair<const std::vector<double>*, const std::vector<Complex>*> {
    auto it = cache.find(p);
    if (it == cache.end()) {
      std::vector<Complex> a;
      std::vector<double> y;
      const double mid = 2.0 * p + 1.0;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double yi = mid + rule.x[i];
        const Complex ph = (i == 0 && p % 8 == 0) ? phi_hat(yi, bump) : phi_hat_gl(yi, bump, 2 * panels_for(yi));
        a.push_back(Complex(1.0, yi) * ph * rule.w[i]);
        y.push_back(yi);
      }
      it = cache.emplace(p, std::move(a)).first;
      nodes.emplace(p, std::move(y));
    }
    return {&nodes[p], &it->second};
  };
  std::optional<Complex> prev;
  for (double T = kStartT; T <= kMaxT; T *= 2) {
    std::vector<double> y;
    std::vector<Complex> a;
    const int half = static_cast<int>(T / 2);
    for (int p = -half; p < half; ++p) {
      auto [py, pa] = panel(p);
      y.insert(y.end(), py->begin(), py->end());
      a.insert(a.end(), pa->begin(), pa->end());
    }
    Complex diag = 0, off = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      diag += a[j] * a[j] * kernel(2.0 * y[j]);
      Complex row = 0;
      for (std::size_t k = j + 1; k < y.size(); ++k) row += a[k] * kernel(y[j] + y[k]);
      off += a[j] * row;
    }
    const Complex S = (diag + 2.0 * off) / (4.0 * std::numbers::pi * std::numbers::pi);
    if (prev && std::abs(S - *prev) < kTailTol) {
      *T_out = T;
      return S;
    }
    prev = S;
  }
  throw Error(Errc::QuadratureNonConvergence, "c_phi tail did not settle");
}

// Trapezoid in y and y' with step halving at each T; the y + y' structure
// of the kernel turns the double sum into an autoconvolution.
Complex scheme_trapezoid(const BumpFn& bump) {
  std::optional<Complex> prev_T;
  for (double T = kStartT; T <= kMaxT; T *= 2) {
    const int intervals = std::max(1024, static_cast<int>(2 * T));
    std::map<long long, Complex> cache;  // y * 1024 -> phi_hat
    std::optional<Complex> prev_h;
    Complex S = 0;
    for (double h = 0.5; h >= 1.0 / 64; h /= 2) {
      const long long n = std::llround(T / h);
      std::vector<Complex> a(static_cast<std::size_t>(2 * n + 1));
      for (long long j = -n; j <= n; ++j) {
        const double y = static_cast<double>(j) * h;
        const long long key = std::llround(y * 1024);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, phi_hat_trapezoid(y, bump, intervals)).first;
        const double w = (j == -n || j == n) ? 0.5 * h : h;
        a[static_cast<std::size_t>(j + n)] = Complex(1.0, y) * it->second * w;
      }
      std::vector<Complex> conv(a.size() * 2 - 1);
      for (std::size_t j = 0; j < a.size(); ++j) {
        const Complex aj = a[j];
        Complex* c = conv.data() + j;
        for (std::size_t k = 0; k < a.size(); ++k) c[k] += aj * a[k];
      }
      Complex sum = 0;
      for (std::size_t s = 0; s < conv.size(); ++s) {
        const double ys = static_cast<double>(static_cast<long long>(s) - 2 * n) * h;
        sum += conv[s] * kernel(ys);
      }
      S = sum / (4.0 * std::numbers::pi * std::numbers::pi);
      if (prev_h && std::abs(S - *prev_h) < kStepTol) break;
      prev_h = S;
    }
    if (prev_T && std::abs(S - *prev_T) < kTailTol) return S;
    prev_T = S;
  }
  throw Error(Errc::QuadratureNonConvergence, "c_phi tail did not settle");
}

}  // namespace

CphiReport c_phi_report(const BumpFn& bump) {
  CphiReport rep;
  const Complex a = scheme_tensor(bump, &rep.T);
  const Complex b = scheme_trapezoid(bump);
  rep.scheme_a = a.real();
  rep.scheme_b = b.real();
  rep.value = a.real();
  rep.imag_residue = std::abs(a.imag());
  rep.rel_diff = std::abs(a.real() - b.real()) / std::abs(a.real());
  rep.analytic = quad::gauss_kronrod([&](double u) { return bump.dphi(u) * bump.dphi(u); }, 0.0, 1.0, 1e-13);
  if (!(rep.value > 0)) throw Error(Errc::NonPositiveResult, "c_phi came out non-positive");
  if (rep.imag_residue > 1e-6) throw Error(Errc::QuadratureNonConvergence, "c_phi imaginary residue above 1e-6");
  return rep;
}

double c_phi(const BumpFn& bump) {
  static std::mutex mu;
  static std::map<std::string, double> memo;
  std::lock_guard lock(mu);
  auto it = memo.find(bump.label);
  if (it != memo.end()) return it->second;
  const double v = c_phi_report(bump).value;
  memo.emplace(bump.label, v);
  return v;
}

double lambda_R(const Divisor& d, double R, const BumpFn& bump) {
  if (!(R > 0)) throw Error(Errc::DegenerateR, "R must be positive");
  double sum = 0;
  divisors_below(d, [&](const Divisor& M) {
    const int mu = mobius(M);
    if (mu) sum += mu * bump.phi(M.degree() / R);
  });
  return sum;
}

double lambda_R(const Field& F, const Poly& f, double R, const BumpFn& bump) {
  return lambda_R(divisor_of(F, f), R, bump);
}

std::uint64_t phi_K(const Field& F, const Poly& W) {
  if (W.is_zero()) throw Error(Errc::ZeroPolynomial, "phi_K of the zero polynomial");
  const auto q = static_cast<std::uint64_t>(F.q());
  std::uint64_t out = 1;
  for (const auto& [p, e] : factor(F, W).factors) out *= (ipow(q, p.degree()) - 1) * ipow(q, p.degree() * (e - 1));
  return out;
}

Poly make_W(const Field& F, int w) {
  Poly W = Poly::one();
  if (w < 1) return W;
  IrreducibleSieve sieve(F, w);
  for (int d = 1; d <= w; ++d)
    for (const Poly& p : sieve.list(d)) W = mul(F, W, p);
  return W;
}

nlohmann::json SieveParams::echo() const {
  const Field& F = field();
  return {{"q", F.q()},
          {"field", F.describe()},
          {"k", k},
          {"r", r},
          {"R", R},
          {"w", w},
          {"W", format_poly(F, W)},
          {"alpha", format_poly(F, alpha)},
          {"twist", format_poly(F, curve.twist)},
          {"bump_label", bump.label},
          {"c_phi", c_phi},
          {"phi_K_W", phi_K_W},
          {"residue", residue},
          {"normalization", normalization}};
}

SieveParams make_params(const CurveModel& curve, int r, int k, std::optional<int> w_override, const Poly& alpha,
                        const BumpFn& bump, std::optional<double> R_override) {
  const Field& F = curve.field;
  if (r < 1) throw Error(Errc::InvalidInput, "r must be >= 1");
  if (k < 1) throw Error(Errc::InvalidInput, "k must be >= 1");
  SieveParams P{curve, k, r, 0, 0, Poly::one(), alpha, bump, 0, 1, 0, 0};
  P.k = k;
  P.r = r;
  if (R_override) {
    P.R = *R_override;
  } else {
    const double n = std::pow(static_cast<double>(F.q()), k);
    P.R = static_cast<double>(r) / (8.0 * n * std::exp2(n));
  }
  if (!(P.R > 1.0)) throw Error(Errc::DegenerateR, "R = " + std::to_string(P.R) + " is not above 1");
  if (w_override) {
    if (*w_override < 0) throw Error(Errc::InvalidInput, "w must be >= 0");
    P.w = *w_override;
  } else {
    P.w = r >= 3 ? std::max(0, static_cast<int>(std::floor(std::log(std::log(static_cast<double>(r)))))) : 0;
  }
  P.W = make_W(F, P.w);
  if (alpha.is_zero() || gcd(F, alpha, P.W).degree() != 0)
    throw Error(Errc::AlphaNotCoprime, "alpha must be nonzero and coprime to W");
  P.alpha = alpha;
  P.bump = bump;
  P.c_phi = c_phi(bump);
  P.phi_K_W = phi_K(F, P.W);
  P.residue = zeta_residue(F.q());
  // the residue is taken in the degree variable: Res * ln q == 1
  const double residue_deg = P.residue * std::log(static_cast<double>(F.q()));
  P.normalization = static_cast<double>(P.phi_K_W) * P.R * residue_deg /
                    (P.c_phi * std::pow(static_cast<double>(F.q()), P.W.degree()));
  return P;
}

Poly twisted_argument(const SieveParams& P, const Poly& x) {
  const Field& F = P.field();
  return add(F, mul(F, P.W, x), mul(F, P.alpha, P.curve.twist));
}

double nu_r(const Poly& x, const SieveParams& P) {
  const Poly f = twisted_argument(P, x);
  if (f.is_zero()) throw Error(Errc::InvalidInput, "W x + alpha vanishes");
  const double l = lambda_R(P.field(), f, P.R, P.bump);
  return P.normalization * l * l;
}

std::vector<double> tabulate_lambda(const SieveParams& P, int window) {
  const Field& F = P.field();
  const auto q = static_cast<std::uint64_t>(F.q());
  const Poly A = mul(F, P.alpha, P.curve.twist);
  const std::uint64_t size = ipow(q, window);
  std::vector<double> values(static_cast<std::size_t>(size), 0.0);

  const int top_arg = std::max(window - 1 + P.W.degree(), A.degree());
  const int top_R = static_cast<int>(std::ceil(P.R)) - 1;
  const int bound = std::min(top_arg, top_R) + 1;
  MobiusSieve mobius_table(F, bound);

  // d sharing a prime with W never divides W x + A
  std::vector<std::vector<bool>> blocked(static_cast<std::size_t>(bound));
  for (int dd = 0; dd < bound; ++dd) blocked[static_cast<std::size_t>(dd)].assign(static_cast<std::size_t>(ipow(q, dd)), false);
  for (const auto& [pi, e] : factor(F, P.W).factors) {
    for (int dd = pi.degree(); dd < bound; ++dd) {
      const int span = dd - pi.degree();
      std::vector<Poly> gens;
      for (int i = 0; i < span; ++i) gens.push_back(shift(pi, i));
      detail::AffineWalker walker(F, dd, shift(pi, span), gens);
      auto& row = blocked[static_cast<std::size_t>(dd)];
      walker.run([&](std::uint64_t idx) { row[idx] = true; });
    }
  }

  for (int dd = 0; dd < bound; ++dd) {
    const double weight = P.bump.phi(dd / P.R);
    if (weight == 0.0) continue;
    const Poly lead = Poly::monomial(1, dd);
    const std::uint64_t count = ipow(q, dd);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const int mu = mobius_table.mu(dd, idx);
      if (!mu || blocked[static_cast<std::size_t>(dd)][idx]) continue;
      const double term = mu * weight;
      if (dd == 0) {
        for (auto& v : values) v += term;
        continue;
      }
      const Poly d = add(F, from_index(F, idx), lead);
      const auto Winv = inverse_mod(F, mod(F, P.W, d), d);
      const Poly x0 = mod(F, neg(F, mulmod(F, A, *Winv, d)), d);
      if (dd <= window) {
        std::vector<Poly> gens;
        for (int i = 0; i < window - dd; ++i) gens.push_back(shift(d, i));
        detail::AffineWalker walker(F, window, x0, gens);
        walker.run([&](std::uint64_t i) { values[i] += term; });
      } else if (x0.degree() < window) {
        values[to_index(F, x0)] += term;
      }
    }
  }
  // W x + A == 0 can only happen when W == 1; zero is not prime
  const Poly zero_at = neg(F, A);
  if (P.W.degree() == 0 && zero_at.degree() < window) values[to_index(F, zero_at)] = 0.0;
  return values;
}

MeasureTable tabulate_nu(const SieveParams& P, int window) {
  std::vector<double> v = tabulate_lambda(P, window);
  for (auto& x : v) x = P.normalization * x * x;
  nlohmann::json meta = P.echo();
  meta["measure"] = "nu_r";
  meta["window"] = window;
  return MeasureTable(P.field(), window, std::move(v), std::move(meta));
}

}  // namespace ffpat
