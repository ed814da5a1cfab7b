#include <doctest.h>

#include <cmath>
#include <set>

#include "../oracle.hpp"
#include "ffpat/divisor.hpp"
#include "ffpat/error.hpp"
#include "ffpat/zeta.hpp"

using namespace ffpat;

TEST_CASE("divisor of a polynomial") {
  const Field F = Field::make(3);
  // 2 t^2 (t+1)^3
  Poly f = mul(F, Poly{0, 0, 2}, mul(F, Poly{1, 1}, mul(F, Poly{1, 1}, Poly{1, 1})));
  const Divisor D = divisor_of(F, f);
  CHECK(D.multiplicity(Poly{0, 1}) == 2);
  CHECK(D.multiplicity(Poly{1, 1}) == 3);
  CHECK(D.multiplicity(Poly{2, 1}) == 0);
  CHECK(D.degree() == 5);
  CHECK_FALSE(D.is_squarefree());
  CHECK(D.generator(F) == monic(F, f));
  CHECK(mobius(D) == 0);
  CHECK(divisor_of(F, Poly::constant(2)).is_zero());
}

TEST_CASE("lattice operations") {
  const Field F = Field::make(2);
  const Divisor a = parse_divisor(F, "0,1^2;1,1^1"), b = parse_divisor(F, "0,1^1;1,1,1^1");
  CHECK(lcm(a, b) == parse_divisor(F, "0,1^2;1,1^1;1,1,1^1"));
  CHECK(meet(a, b) == parse_divisor(F, "0,1^1"));
  CHECK(a + b == parse_divisor(F, "0,1^3;1,1^1;1,1,1^1"));
  CHECK(leq(meet(a, b), a));
  CHECK_FALSE(leq(a, b));
  CHECK(mobius(parse_divisor(F, "0,1^1;1,1^1")) == 1);
  CHECK(mobius(parse_divisor(F, "1,1,1^1")) == -1);
  CHECK(mobius(Divisor{}) == 1);
  CHECK(parse_divisor(F, format_divisor(F, a)) == a);
  CHECK(format_divisor(F, Divisor{}).empty());
  CHECK_THROWS_AS(parse_divisor(F, "1,0,1^1"), Error);  // (t+1)^2 is not prime
  CHECK_THROWS_AS(parse_divisor(F, "0,1^0"), Error);
}

TEST_CASE("divisors below D are exactly the monic divisors of its generator") {
  const Field F = Field::make(3);
  const Poly g = mul(F, mul(F, Poly{0, 1}, Poly{0, 1}), mul(F, Poly{1, 1}, Poly{1, 0, 1}));
  const Divisor D = divisor_of(F, g);
  std::set<oracle::P> seen;
  int count = 0;
  divisors_below(D, [&](const Divisor& M) {
    ++count;
    CHECK(leq(M, D));
    seen.insert(oracle::from_poly(M.generator(F)));
  });
  CHECK(count == 3 * 2 * 2);
  std::set<oracle::P> expect;
  for (int d = 0; d <= g.degree(); ++d)
    for (std::uint64_t i = 0; i < oracle::pw(3, d); ++i) {
      auto m = oracle::monic_from(3, d, i);
      if (oracle::rem(oracle::from_poly(g), m, 3).empty()) expect.insert(m);
    }
  CHECK(seen == expect);
}

TEST_CASE("curve models") {
  const Field F = Field::make(2);
  CHECK(CurveModel::rational(F).twist == Poly::one());
  CHECK(CurveModel::twisted(F, Poly{0, 1, 1}).extension_degree() == 1);
  CHECK_THROWS_AS(CurveModel::twisted(F, Poly{1, 0, 1}), Error);  // (t+1)^2
  CHECK_THROWS_AS(CurveModel::twisted(Field::make(3), Poly{0, 2}), Error);  // not monic
}

TEST_CASE("closed-form zeta against its geometric series") {
  for (int q : {2, 3, 5}) {
    for (Complex z : {Complex{2, 0}, Complex{1.5, 3}, Complex{3, -1}}) {
      Complex s = 0;
      for (int n = 0; n < 200; ++n) s += std::pow(static_cast<double>(q), n) * std::pow(Complex(q), -z * static_cast<double>(n));
      CHECK(std::abs(zeta_closed(q, z) - s) < 1e-10);
    }
  }
  CHECK_THROWS_AS(zeta_closed(2, Complex{1, 0}), Error);
  CHECK_THROWS_AS(zeta_closed(3, Complex{1, 2 * M_PI / std::log(3.0)}), Error);
  CHECK(zeta_residue(2) == doctest::Approx(1 / std::log(2.0)));
}

TEST_CASE("truncated Euler product against a direct product over primes") {
  for (int q : {2, 3}) {
    const int B = q == 2 ? 8 : 5;
    for (Complex z : {Complex{2, 0}, Complex{1.5, 1}}) {
      Complex prod = 1;
      for (int d = 1; d <= B; ++d) {
        int primes = 0;
        for (std::uint64_t i = 0; i < oracle::pw(q, d); ++i) primes += oracle::irreducible(oracle::monic_from(q, d, i), q);
        const Complex local = 1.0 / (1.0 - std::pow(Complex(q), -z * static_cast<double>(d)));
        for (int k = 0; k < primes; ++k) prod *= local;
      }
      CHECK(std::abs(euler_truncated(q, z, B) - prod) < 1e-12 * std::abs(prod));
    }
  }
  CHECK(std::abs(euler_truncated(2, Complex{2, 0}, 40) - 2.0) < 1e-9);
}
