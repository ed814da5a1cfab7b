#include "ffpat/irreducible.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "ffpat/error.hpp"
#include "walker.hpp"

namespace ffpat {

Poly Factorization::expand(const Field& F) const {
  Poly out = Poly::constant(unit);
  for (const auto& [p, m] : factors)
    for (int i = 0; i < m; ++i) out = mul(F, out, p);
  return out;
}

namespace {

const Poly kT{0, 1};

Poly t_minus(const Field& F, const Poly& h) { return sub(F, h, kT); }

}  // namespace

bool is_irreducible(const Field& F, const Poly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "irreducibility of the zero polynomial");
  const Poly g = monic(F, f);
  const int d = g.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  Poly h = mod(F, kT, g);
  for (int i = 1; 2 * i <= d; ++i) {
    h = frobenius_mod(F, h, g);
    if (gcd(F, t_minus(F, h), g).degree() != 0) return false;
  }
  return true;
}

bool is_irreducible_rabin(const Field& F, const Poly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "irreducibility of the zero polynomial");
  const Poly g = monic(F, f);
  const int d = g.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  std::vector<Poly> powers{mod(F, kT, g)};  // powers[i] = t^{q^i} mod g
  for (int i = 1; i <= d; ++i) powers.push_back(frobenius_mod(F, powers.back(), g));
  if (powers[static_cast<std::size_t>(d)] != mod(F, kT, g)) return false;
  int rest = d;
  for (int l = 2; l <= rest; ++l) {
    if (rest % l) continue;
    while (rest % l == 0) rest /= l;
    if (gcd(F, t_minus(F, powers[static_cast<std::size_t>(d / l)]), g).degree() != 0) return false;
  }
  return true;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Field& F, const Poly& c) {
  const int p = F.p();
  std::uint64_t root_exp = 1;  // a^{1/p} = a^{q/p}
  for (int i = 1; i < F.e(); ++i) root_exp *= static_cast<std::uint64_t>(p);
  std::vector<Elem> out(static_cast<std::size_t>(c.degree() / p) + 1, 0);
  for (int i = 0; i <= c.degree(); i += p) out[static_cast<std::size_t>(i / p)] = F.pow(c[i], root_exp);
  return Poly(std::move(out));
}

void squarefree_parts(const Field& F, const Poly& f, int scale_mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.degree() < 1) return;
  Poly c = gcd(F, f, derivative(F, f));
  Poly w = quo(F, f, c);
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(F, w, c);
    Poly z = quo(F, w, y);
    if (z.degree() > 0) out.push_back({monic(F, z), i * scale_mult});
    ++i;
    w = y;
    c = quo(F, c, y);
  }
  if (c.degree() > 0) squarefree_parts(F, pth_root(F, monic(F, c)), scale_mult * F.p(), out);
}

std::vector<std::pair<Poly, int>> distinct_degree(const Field& F, Poly g) {
  std::vector<std::pair<Poly, int>> out;
  Poly h = mod(F, kT, g);
  for (int i = 1; 2 * i <= g.degree(); ++i) {
    h = frobenius_mod(F, h, g);
    Poly part = gcd(F, t_minus(F, h), g);
    if (part.degree() > 0) {
      out.push_back({part, i});
      g = quo(F, g, part);
      h = mod(F, h, g);
    }
  }
  if (g.degree() > 0) out.push_back({monic(F, g), g.degree()});
  return out;
}

void equal_degree(const Field& F, const Poly& g, int i, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == i) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<int> coef(0, F.q() - 1);
  while (true) {
    std::vector<Elem> a(static_cast<std::size_t>(g.degree()));
    for (auto& c : a) c = static_cast<Elem>(coef(rng));
    Poly ap(std::move(a));
    if (ap.degree() < 1) continue;
    Poly b;
    if (F.p() != 2) {
      Poly acc = ap, cur = ap;
      for (int j = 1; j < i; ++j) {
        cur = frobenius_mod(F, cur, g);
        acc = mulmod(F, acc, cur, g);
      }
      b = sub(F, powmod(F, acc, static_cast<std::uint64_t>((F.q() - 1) / 2), g), Poly::one());
    } else {
      Poly cur = ap;
      b = ap;
      for (int j = 1; j < F.e() * i; ++j) {
        cur = mulmod(F, cur, cur, g);
        b = add(F, b, cur);
      }
    }
    Poly h = gcd(F, b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(F, h, i, rng, out);
      equal_degree(F, quo(F, g, h), i, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const Field& F, const Poly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "factorization of the zero polynomial");
  Factorization result;
  result.unit = f.lead();
  const Poly g = monic(F, f);
  std::vector<std::pair<Poly, int>> parts;
  squarefree_parts(F, g, 1, parts);
  std::mt19937_64 rng(0x5eedf00dULL);
  for (const auto& [part, mult] : parts) {
    for (const auto& [block, deg] : distinct_degree(F, part)) {
      std::vector<Poly> primes;
      equal_degree(F, block, deg, rng, primes);
      for (auto& p : primes) result.factors.push_back({monic(F, p), mult});
    }
  }
  std::sort(result.factors.begin(), result.factors.end());
  // squarefree parts are coprime, so equal primes never repeat; merge anyway
  std::vector<std::pair<Poly, int>> merged;
  for (auto& fm : result.factors) {
    if (!merged.empty() && merged.back().first == fm.first)
      merged.back().second += fm.second;
    else
      merged.push_back(std::move(fm));
  }
  result.factors = std::move(merged);
  return result;
}

int mobius_int(long long n) {
  if (n < 1) return 0;
  int m = 1;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

std::uint64_t count_irreducible(int q, int d) {
  if (d < 1) throw Error(Errc::InvalidInput, "degree must be >= 1");
  __int128 sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    const int m = mobius_int(e);
    if (m) sum += static_cast<__int128>(m) * static_cast<__int128>(ipow(static_cast<std::uint64_t>(q), d / e));
  }
  return static_cast<std::uint64_t>(sum / d);
}

// ---------------------------------------------------------------------------

IrreducibleSieve::IrreducibleSieve(const Field& F, int max_degree) : F_(F), max_degree_(max_degree) {
  if (max_degree < 1) throw Error(Errc::InvalidInput, "sieve degree must be >= 1");
  const auto q = static_cast<std::uint64_t>(F.q());
  reducible_.resize(static_cast<std::size_t>(max_degree) + 1);
  std::vector<std::vector<Poly>> primes(static_cast<std::size_t>(max_degree) / 2 + 1);
  for (int d = 1; d <= max_degree; ++d) {
    const std::uint64_t n = ipow(q, d);
    auto& bits = reducible_[static_cast<std::size_t>(d)];
    bits.assign(static_cast<std::size_t>((n + 63) / 64), 0);
    for (int k = 1; 2 * k <= d; ++k) {
      const int span = d - k;
      for (const Poly& p : primes[static_cast<std::size_t>(k)]) {
        std::vector<Poly> gens;
        for (int i = 0; i < span; ++i) gens.push_back(shift(p, i));
        detail::AffineWalker walker(F, d, shift(p, span), gens);
        walker.run([&](std::uint64_t idx) { bits[idx >> 6] |= std::uint64_t{1} << (idx & 63); });
      }
    }
    if (2 * d <= max_degree) {
      auto& mine = primes[static_cast<std::size_t>(d)];
      for (std::uint64_t idx = 0; idx < n; ++idx)
        if (!((bits[idx >> 6] >> (idx & 63)) & 1)) mine.push_back(add(F, from_index(F, idx), Poly::monomial(1, d)));
    }
  }
}

bool IrreducibleSieve::is_irreducible(int d, std::uint64_t index) const {
  if (d < 1 || d > max_degree_) throw Error(Errc::InvalidInput, "degree outside the sieve range");
  return !((reducible_[static_cast<std::size_t>(d)][index >> 6] >> (index & 63)) & 1);
}

bool IrreducibleSieve::is_irreducible(const Poly& monic_f) const {
  const int d = monic_f.degree();
  if (d < 1) return false;
  return is_irreducible(d, to_index(F_, monic_f) - ipow(static_cast<std::uint64_t>(F_.q()), d));
}

std::uint64_t IrreducibleSieve::count(int d) const {
  const std::uint64_t n = ipow(static_cast<std::uint64_t>(F_.q()), d);
  const auto& bits = reducible_.at(static_cast<std::size_t>(d));
  std::uint64_t marked = 0;
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    const std::uint64_t base = static_cast<std::uint64_t>(w) * 64;
    if (base + 64 > n) word &= (n - base == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n - base)) - 1);
    marked += static_cast<std::uint64_t>(std::popcount(word));
  }
  return n - marked;
}

std::vector<Poly> IrreducibleSieve::list(int d) const {
  std::vector<Poly> out;
  const std::uint64_t n = ipow(static_cast<std::uint64_t>(F_.q()), d);
  const Poly lead = Poly::monomial(1, d);
  for (std::uint64_t idx = 0; idx < n; ++idx)
    if (is_irreducible(d, idx)) out.push_back(add(F_, from_index(F_, idx), lead));
  return out;
}

MobiusSieve::MobiusSieve(const Field& F, int bound) : bound_(bound) {
  if (bound < 1) throw Error(Errc::InvalidInput, "Moebius sieve bound must be >= 1");
  const auto q = static_cast<std::uint64_t>(F.q());
  values_.resize(static_cast<std::size_t>(bound));
  for (int d = 0; d < bound; ++d) values_[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(ipow(q, d)), 1);
  if (bound < 2) return;
  IrreducibleSieve irr(F, bound - 1);
  for (int k = 1; k < bound; ++k) {
    for (const Poly& p : irr.list(k)) {
      const Poly p2 = mul(F, p, p);
      for (int n = k; n < bound; ++n) {
        auto& vals = values_[static_cast<std::size_t>(n)];
        const int span = n - k;
        std::vector<Poly> gens;
        for (int i = 0; i < span; ++i) gens.push_back(shift(p, i));
        detail::AffineWalker walker(F, n, shift(p, span), gens);
        walker.run([&](std::uint64_t idx) { vals[idx] = static_cast<std::int8_t>(-vals[idx]); });
        if (2 * k <= n) {
          const int span2 = n - 2 * k;
          std::vector<Poly> gens2;
          for (int i = 0; i < span2; ++i) gens2.push_back(shift(p2, i));
          detail::AffineWalker w2(F, n, shift(p2, span2), gens2);
          w2.run([&](std::uint64_t idx) { vals[idx] = 0; });
        }
      }
    }
  }
}

}  // namespace ffpat
