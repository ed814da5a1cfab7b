#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ffpat/field.hpp"
#include "ffpat/poly.hpp"

namespace ffpat {

/// f == unit * prod(prime^mult), primes monic irreducible and sorted canonically.
struct Factorization {
  Elem unit = 1;
  std::vector<std::pair<Poly, int>> factors;

  Poly expand(const Field& F) const;
  bool is_single_prime() const { return factors.size() == 1 && factors.front().second == 1; }
};

/// Ben-Or test: gcd(t^{q^i} - t, f) == 1 for every i <= deg f / 2. Exits at
/// the smallest factor degree, which makes exhaustive scans cheap.
/// Throws ZeroPolynomial for f == 0; constants are not irreducible.
bool is_irreducible(const Field& F, const Poly& f);

/// Rabin's criterion: t^{q^d} == t mod f and gcd(t^{q^{d/l}} - t, f) == 1 for
/// each prime l | d.
bool is_irreducible_rabin(const Field& F, const Poly& f);

/// Squarefree decomposition, distinct-degree split, then Cantor-Zassenhaus
/// equal-degree split with a fixed-seed generator.
Factorization factor(const Field& F, const Poly& f);

/// Monic irreducibles of degree d over F_q: (1/d) sum_{e|d} mu(e) q^{d/e}.
std::uint64_t count_irreducible(int q, int d);

/// Integer Moebius function.
int mobius_int(long long n);

/// Exhaustive sieve over the monic polynomials of every degree <= max_degree:
/// each polynomial is marked reducible when some monic irreducible of degree
/// <= n/2 divides it; whatever stays unmarked is irreducible.
class IrreducibleSieve {
 public:
  IrreducibleSieve(const Field& F, int max_degree);

  const Field& field() const noexcept { return F_; }
  int max_degree() const noexcept { return max_degree_; }
  /// `index` is the base-q index of the lower d coefficients of a monic poly.
  bool is_irreducible(int d, std::uint64_t index) const;
  bool is_irreducible(const Poly& monic_f) const;
  std::uint64_t count(int d) const;
  /// Monic irreducibles of degree d in ascending index order.
  std::vector<Poly> list(int d) const;

 private:
  Field F_;
  int max_degree_;
  std::vector<std::vector<std::uint64_t>> reducible_;  // bitsets per degree
};

/// Moebius values of every monic polynomial of degree < bound, computed by
/// sieving with the irreducibles. Entries are indexed like IrreducibleSieve.
class MobiusSieve {
 public:
  MobiusSieve(const Field& F, int bound);

  int bound() const noexcept { return bound_; }
  int mu(int d, std::uint64_t index) const { return values_[static_cast<std::size_t>(d)][index]; }
  std::uint64_t size(int d) const { return values_[static_cast<std::size_t>(d)].size(); }

 private:
  int bound_;
  std::vector<std::vector<std::int8_t>> values_;
};

}  // namespace ffpat
