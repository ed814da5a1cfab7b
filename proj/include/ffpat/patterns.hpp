#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ffpat/irreducible.hpp"

namespace ffpat {

/// {a + m h : deg h < s}.
struct TruncatedClass {
  Poly a;
  Poly m;
  int s = 0;
};

/// Elements are tested as W f + alpha instead of f.
struct Twist {
  Poly W;
  Poly alpha;
};

struct PrimeClassCertificate {
  int q = 0;
  TruncatedClass cls;
  std::optional<Twist> twist;
  std::optional<std::pair<Poly, Poly>> equivalence;  ///< (M, residue) for in-class searches
  std::vector<Poly> elements;                         ///< the f, before any twist
  std::vector<Factorization> witnesses;               ///< of f or W f + alpha
  bool valid = false;

  nlohmann::json to_json(const Field& F) const;
};

/// The q^s elements in ascending index order of h; throws ZeroModulus.
std::vector<Poly> enumerate_class(const Field& F, const TruncatedClass& c);

/// Every element (or W f + alpha) must be a single prime with multiplicity 1.
PrimeClassCertificate is_prime_class(const Field& F, const TruncatedClass& c, const std::optional<Twist>& twist = {});

struct SearchOptions {
  int deg_m_max = -1;  ///< negative: deg_a_max - s
  int deg_a_max = 0;
  int s = 1;
  std::optional<Twist> twist;
  std::uint64_t budget = std::uint64_t{1} << 32;  ///< classes examined
  bool degree_guard = true;                        ///< deg a >= deg m + s
  int threads = 1;
};

struct SearchReport {
  std::vector<PrimeClassCertificate> certificates;
  std::uint64_t classes_total = 0;    ///< size of the search space
  std::uint64_t classes_checked = 0;
  bool budget_exceeded = false;
  std::uint64_t distinct_divisors = 0;  ///< over all certified elements

  bool exhausted() const { return !budget_exceeded && classes_checked == classes_total; }
  nlohmann::json summary() const;
};

/// Exhaustive scan over monic m (deg m <= deg_m_max) and monic a
/// (deg a <= deg_a_max) in canonical form, i.e. with zero coefficients in
/// degrees [deg m, deg m + s), so every class is visited once. Results come
/// in (deg m, m, deg a, a) order regardless of the thread count.
SearchReport search(const Field& F, const SearchOptions& opt);

struct InClassOptions {
  Poly M = Poly::one();
  Poly residue;
  Poly W = Poly::one();
  Poly alpha = Poly::one();
  int r = 0;           ///< elements have degree < r
  int s = 1;
  int deg_m_max = -1;  ///< negative: r - 1 - s
  std::uint64_t budget = std::uint64_t{1} << 32;
  int threads = 1;
};

/// Classes with m a multiple of M and a == residue (mod M), every element
/// of degree < r, tested as W f + alpha. Throws AlphaNotCoprime.
SearchReport search_in_class(const Field& F, const InClassOptions& opt);

}  // namespace ffpat
