#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "ffpat/correlate.hpp"
#include "ffpat/error.hpp"

using namespace ffpat;

namespace {

MeasureTable random_table(const Field& F, int window, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 2);
  std::vector<double> v(static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(F.q()), window)));
  for (auto& x : v) x = u(rng);
  return MeasureTable(F, window, std::move(v));
}

SieveParams params(const Field& F, int w, const Poly& alpha = Poly::one()) {
  return make_params(CurveModel::rational(F), 12, 1, w, alpha, BumpFn::mollifier(), 6.0);
}

}  // namespace

TEST_CASE("system validation") {
  const Field F = Field::make(3);
  LinearSystem ok{2, {{Poly{1}, Poly{0}}, {Poly{1}, Poly{1}}}, {Poly{}, Poly{1}}};
  CHECK_NOTHROW(ok.validate(F, 1));
  LinearSystem prop{2, {{Poly{1}, Poly{2}}, {Poly{2}, Poly{1}}}, {Poly{}, Poly{}}};
  CHECK_THROWS_AS(prop.validate(F, 1), Error);  // second row is twice the first
  LinearSystem zero{1, {{Poly{}}}, {Poly{}}};
  CHECK_THROWS_AS(zero.validate(F, 1), Error);
  LinearSystem big{1, {{Poly{0, 1}}}, {Poly{}}};
  CHECK_THROWS_AS(big.validate(F, 1), Error);  // coefficient degree >= k
  CHECK_NOTHROW(big.validate(F, 2));
  LinearSystem shape{2, {{Poly{1}}}, {Poly{}}};
  CHECK_THROWS_AS(shape.validate(F, 1), Error);
}

TEST_CASE("cross-correlation equals the brute-force average") {
  for (int p : {2, 3}) {
    const Field F = Field::make(p);
    const int window = p == 2 ? 5 : 3;
    const MeasureTable nu = random_table(F, window + 1, 99);
    LinearSystem sys{2, {{Poly{1}, Poly{0}}, {Poly{1}, Poly{1}}, {Poly{0}, Poly{1}}}, {Poly{}, Poly{0, 0, 1}, Poly{1}}};
    const auto rep = cross_correlation(sys, nu, window);
    const std::uint64_t n = oracle::pw(p, window);
    double ref = 0;
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) {
        auto x1 = oracle::from_poly(from_index(F, i)), x2 = oracle::from_poly(from_index(F, j));
        const oracle::P args[3] = {x1, oracle::add(oracle::add(x1, x2, p), {0, 0, 1}, p), oracle::add(x2, {1}, p)};
        double prod = 1;
        for (const auto& a : args) prod *= nu.at(oracle::to_poly(a));
        ref += prod;
      }
    ref /= static_cast<double>(n * n);
    CHECK(rep.estimate == doctest::Approx(ref).epsilon(1e-12));
    CHECK(rep.mode == "exhaustive");
    CHECK(rep.terms == n * n);
  }
}

TEST_CASE("cross-correlation: unit measure, coverage, budget and sampling") {
  const Field F = Field::make(2);
  LinearSystem sys{1, {{Poly{1}}, {Poly{1}}}, {Poly{}, Poly{1}}};
  const auto unit = cross_correlation(sys, MeasureTable::unit(F, 10), 10);
  CHECK(unit.estimate == 1.0);
  LinearSystem far{1, {{Poly{1}}}, {Poly{0, 0, 0, 0, 1}}};
  CHECK_THROWS_AS(cross_correlation(far, MeasureTable::unit(F, 4), 4), Error);
  CHECK_THROWS_AS(cross_correlation(sys, MeasureTable::unit(F, 12), 12, 1000), Error);
  const MeasureTable nu = random_table(F, 12, 5);
  const auto exact = cross_correlation(sys, nu, 12);
  const auto sampled = cross_correlation(sys, nu, 12, 1000, SamplingPlan{512, 3});
  CHECK(sampled.mode == "sampled");
  CHECK(std::abs(sampled.estimate - exact.estimate) < 6 * sampled.stderr_ + 1e-12);
  const auto again = cross_correlation(sys, nu, 12, 1000, SamplingPlan{512, 3}, 3);
  CHECK(again.estimate == sampled.estimate);
}

TEST_CASE("omega_local equals a brute-force count") {
  std::mt19937_64 rng(41);
  for (int p : {2, 3}) {
    const Field F = Field::make(p);
    const SieveParams P = params(F, 1);
    const auto Wo = oracle::from_poly(P.W);
    LinearSystem sys{2, {{Poly{1}, Poly{0}}, {Poly{1}, Poly{1}}}, {Poly{}, Poly{1, 1}}};
    const std::vector<oracle::P> pool = p == 2 ? std::vector<oracle::P>{{1}, {1, 1, 1}, {0, 1}, {1, 1, 0, 1}}
                                               : std::vector<oracle::P>{{1}, {1, 0, 1}, {2, 1}, {1, 2, 0, 1}};
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<oracle::P> t = {pool[rng() % pool.size()], pool[rng() % pool.size()]};
      oracle::P d{1};
      for (const auto& ti : t)
        if (!oracle::rem(d, ti, p).empty()) d = oracle::divmod(oracle::mul(d, ti, p), oracle::gcd(d, ti, p), p).first;
      const std::uint64_t n = oracle::pw(p, oracle::deg(d));
      long long count = 0;
      for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) {
          auto x1 = oracle::from_poly(from_index(F, i)), x2 = oracle::from_poly(from_index(F, j));
          // W psi_j(x) + W b_j + alpha
          const oracle::P v0 = oracle::add(oracle::mul(Wo, x1, p), {1}, p);
          const oracle::P v1 = oracle::add(oracle::mul(Wo, oracle::add(oracle::add(x1, x2, p), {1, 1}, p), p), {1}, p);
          count += oracle::rem(v0, t[0], p).empty() && oracle::rem(v1, t[1], p).empty();
        }
      const Rational w = omega_local(sys, {oracle::to_poly(t[0]), oracle::to_poly(t[1])}, P);
      CHECK(w == Rational(count, static_cast<long long>(n * n)));
      CHECK(omega_crt_check(sys, {oracle::to_poly(t[0]), oracle::to_poly(t[1])}, P));
    }
  }
}

TEST_CASE("omega_prime: one condition on a prime outside W has density 1/N pi") {
  const Field F = Field::make(2);
  const SieveParams P = params(F, 1);
  LinearSystem sys{1, {{Poly{1}}, {Poly{1}}}, {Poly{}, Poly{1}}};
  const Poly pi{1, 1, 1};
  CHECK(omega_prime(sys, {true, false}, pi, P) == Rational(1, 4));
  // both: pi | W x + 1 and pi | W x + W + 1 forces pi | W, impossible
  CHECK(omega_prime(sys, {true, true}, pi, P) == Rational(0));
  CHECK(omega_prime(sys, {false, false}, pi, P) == Rational(1));
  // pi = t divides W, so pi | W x + 1 never holds
  CHECK(omega_prime(sys, {true, false}, Poly{0, 1}, P) == Rational(0));
  CHECK_THROWS_AS(omega_local(sys, {Poly{1, 0, 1}, Poly{1}}, P), Error);  // (t+1)^2
}

TEST_CASE("Euler local factor for a single form") {
  const Field F = Field::make(3);
  const SieveParams P = params(F, 0);
  LinearSystem sys{1, {{Poly{1}}}, {Poly{}}};
  const Poly pi{1, 0, 1};
  const double t = 0.7, tp = -0.3;
  // 1 - (1/N)(N^{-a/R} + N^{-b/R} - N^{-(a+b)/R}), a = 1+it, b = 1+it'
  const double N = 9;
  const Complex a(1, t), b(1, tp);
  const Complex expect = 1.0 - (std::pow(N, -a / P.R) + std::pow(N, -b / P.R) - std::pow(N, -(a + b) / P.R)) / N;
  CHECK(std::abs(euler_F_local({t}, {tp}, sys, P, pi) - expect) < 1e-14);
  const Complex prod = euler_F_local({t}, {tp}, sys, P, Poly{0, 1}) * euler_F_local({t}, {tp}, sys, P, Poly{1, 1}) *
                       euler_F_local({t}, {tp}, sys, P, Poly{2, 1});
  CHECK(std::abs(euler_F({t}, {tp}, sys, P, 1) - prod) < 1e-14);
  // W = 1: q^0 / (1 * R * Res) times ab / (a + b)
  CHECK(std::abs(euler_F_target({t}, {tp}, P) - a * b / (a + b) * std::log(3.0) / P.R) < 1e-14);
}

TEST_CASE("auto-correlation pieces") {
  const Field F = Field::make(2);
  const MeasureTable nu = random_table(F, 8, 7);
  const std::vector<Poly> y = {Poly{1, 1}, Poly{0, 0, 1, 1}, Poly{}};
  double ref = 0;
  for (std::uint64_t i = 0; i < 128; ++i) {
    double prod = 1;
    for (const auto& yi : y) prod *= nu.at(add(F, from_index(F, i), yi));
    ref += prod;
  }
  CHECK(auto_correlation_lhs(y, nu, 7) == doctest::Approx(ref / 128).epsilon(1e-13));
  CHECK_THROWS_AS(auto_correlation_lhs({Poly{1}, Poly{1}}, nu, 7), Error);
  CHECK_THROWS_AS(auto_correlation_lhs({Poly{1}, Poly::monomial(1, 8)}, nu, 7), Error);  // table too small

  const SieveParams P = params(F, 1);
  // differences (t+1)^3, t+1 and t^2 (t+1) only involve primes dividing W
  CHECK(auto_correlation_shape(y, P, 2.0) == 1.0);
  // t^2+t+1 is outside W: one factor 1 + C/4
  CHECK(auto_correlation_shape({Poly{}, Poly{1, 1, 1}}, P, 2.0) == 1.5);

  std::vector<std::vector<Poly>> family;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) family.push_back({from_index(F, rng() % 64), from_index(F, 64 + rng() % 64)});
  const AutoCalibration cal = calibrate_auto(family, nu, 7, P);
  for (const auto& f : family) CHECK(auto_correlation(f, nu, 7, P, cal).holds());
}
