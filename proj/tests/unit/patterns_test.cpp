#include <doctest.h>

#include <set>

#include "../oracle.hpp"
#include "ffpat/error.hpp"
#include "ffpat/patterns.hpp"

using namespace ffpat;

namespace {

bool all_prime(const std::vector<Poly>& elements, int p) {
  for (const auto& f : elements)
    if (!oracle::irreducible(oracle::monic(oracle::from_poly(f), p), p)) return false;
  return true;
}

}  // namespace

TEST_CASE("class enumeration") {
  const Field F = Field::make(3);
  const TruncatedClass c{Poly{1, 0, 0, 1}, Poly{0, 1}, 2};
  const auto el = enumerate_class(F, c);
  REQUIRE(el.size() == 9);
  std::set<oracle::P> seen;
  for (const auto& f : el) {
    const auto d = oracle::sub(oracle::from_poly(f), {1, 0, 0, 1}, 3);
    CHECK(oracle::rem(d, {0, 1}, 3).empty());
    CHECK(oracle::deg(d) <= 2);
    seen.insert(oracle::from_poly(f));
  }
  CHECK(seen.size() == 9);
  CHECK(el.front() == c.a);
  CHECK_THROWS_AS(enumerate_class(F, {Poly{1, 1}, Poly{}, 1}), Error);
}

TEST_CASE("prime class certificate for t^3+t+1 mod t^2+t") {
  const Field F = Field::make(2);
  const auto cert = is_prime_class(F, {Poly{1, 1, 0, 1}, Poly{0, 1, 1}, 1});
  CHECK(cert.valid);
  CHECK(cert.elements == std::vector<Poly>{Poly{1, 1, 0, 1}, Poly{1, 0, 1, 1}});
  const auto bad = is_prime_class(F, {Poly{1, 1, 0, 1}, Poly{0, 1}, 1});  // t^3 + 1 = (t+1)(t^2+t+1)
  CHECK_FALSE(bad.valid);
  const auto twisted = is_prime_class(F, {Poly{0, 1}, Poly{1}, 1}, Twist{Poly{0, 1}, Poly{1}});
  // t * f + 1 for f in {t, t+1}: t^2+1 reducible
  CHECK_FALSE(twisted.valid);
}

TEST_CASE("search results are verified classes and the scan is exhaustive") {
  const Field F = Field::make(2);
  SearchOptions opt;
  opt.s = 1;
  opt.deg_a_max = 5;
  const SearchReport rep = search(F, opt);
  CHECK(rep.exhausted());
  // independent recount: canonical classes (a, m) with every element prime
  std::uint64_t expect = 0, total = 0;
  for (int dm = 0; dm + 1 <= 5; ++dm)
    for (std::uint64_t mi = 0; mi < oracle::pw(2, dm); ++mi) {
      const auto m = oracle::monic_from(2, dm, mi);
      for (int da = dm + 1; da <= 5; ++da)
        for (std::uint64_t ai = 0; ai < oracle::pw(2, da); ++ai) {
          const auto a = oracle::monic_from(2, da, ai);
          if (a[static_cast<std::size_t>(dm)] != 0) continue;  // canonical: coefficient dm is free
          ++total;
          bool ok = oracle::irreducible(a, 2) && oracle::irreducible(oracle::add(a, m, 2), 2);
          expect += ok;
        }
    }
  CHECK(rep.classes_total == total);
  CHECK(rep.certificates.size() == expect);
  bool found = false;
  for (const auto& c : rep.certificates) {
    CHECK(c.valid);
    CHECK(all_prime(c.elements, 2));
    found |= c.cls.a == Poly{1, 1, 0, 1} && c.cls.m == Poly{0, 1, 1};
  }
  CHECK(found);
}

TEST_CASE("search is independent of the thread count and honours the budget") {
  const Field F = Field::make(3);
  SearchOptions opt;
  opt.s = 1;
  opt.deg_a_max = 4;
  const auto one = search(F, opt);
  opt.threads = 4;
  const auto four = search(F, opt);
  REQUIRE(one.certificates.size() == four.certificates.size());
  for (std::size_t i = 0; i < one.certificates.size(); ++i) CHECK(one.certificates[i].cls.a == four.certificates[i].cls.a);
  opt.budget = 10;
  const auto cut = search(F, opt);
  CHECK(cut.budget_exceeded);
  CHECK(cut.classes_checked == 10);
  CHECK_FALSE(cut.exhausted());
  opt.budget = 1u << 20;
  opt.twist = Twist{Poly{0, 1}, Poly{}};
  CHECK_THROWS_AS(search(F, opt), Error);
}

TEST_CASE("in-class search respects the congruence and the twist") {
  const Field F = Field::make(2);
  InClassOptions opt;
  opt.M = Poly{0, 1};
  opt.residue = Poly{1};
  opt.W = Poly{0, 1, 1};
  opt.alpha = Poly{1};
  opt.r = 7;
  opt.s = 1;
  const auto rep = search_in_class(F, opt);
  CHECK(rep.exhausted());
  for (const auto& c : rep.certificates) {
    CHECK(oracle::rem(oracle::from_poly(c.cls.m), {0, 1}, 2).empty());
    CHECK(oracle::rem(oracle::sub(oracle::from_poly(c.cls.a), {1}, 2), {0, 1}, 2).empty());
    for (const auto& f : c.elements) {
      CHECK(f.degree() < 7);
      const auto g = oracle::add(oracle::mul({0, 1, 1}, oracle::from_poly(f), 2), {1}, 2);
      CHECK(oracle::irreducible(g, 2));
    }
  }
  opt.alpha = Poly{0, 1};
  CHECK_THROWS_AS(search_in_class(F, opt), Error);
}
