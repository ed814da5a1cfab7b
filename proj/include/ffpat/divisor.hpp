#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "ffpat/field.hpp"
#include "ffpat/poly.hpp"

namespace ffpat {

/// Effective divisor on the affine line: monic irreducible -> multiplicity.
/// Keys are kept in canonical order, so equal divisors compare equal.
class Divisor {
 public:
  using Map = std::map<Poly, int>;

  Divisor() = default;
  explicit Divisor(Map primes);

  const Map& primes() const noexcept { return primes_; }
  bool is_zero() const noexcept { return primes_.empty(); }
  int multiplicity(const Poly& prime) const;
  int degree() const;
  bool is_squarefree() const;
  bool is_prime() const { return primes_.size() == 1 && primes_.begin()->second == 1; }
  /// The polynomial prod(prime^mult).
  Poly generator(const Field& F) const;

  friend bool operator==(const Divisor&, const Divisor&) = default;
  friend Divisor operator+(const Divisor& a, const Divisor& b);

 private:
  Map primes_;
};

/// Divisor of the monic normalization of f; constants give the zero divisor.
Divisor divisor_of(const Field& F, const Poly& f);
int mobius(const Divisor& d);
bool leq(const Divisor& a, const Divisor& b);
Divisor lcm(const Divisor& a, const Divisor& b);
Divisor meet(const Divisor& a, const Divisor& b);

/// Calls `visit` on every M <= D (prod(mult + 1) of them) in odometer order,
/// first prime fastest.
void divisors_below(const Divisor& D, const std::function<void(const Divisor&)>& visit);

/// "poly^mult;poly^mult" in canonical order; the zero divisor is "".
std::string format_divisor(const Field& F, const Divisor& d);
Divisor parse_divisor(const Field& F, std::string_view text);

/// The rational function field with an optional twist D = (g)_0.
/// Elements of L(D) are stored by their numerator h (f = h / g).
struct CurveModel {
  Field field;
  Poly twist = Poly::one();

  static CurveModel rational(const Field& F) { return {F, Poly::one()}; }
  /// Throws InvalidInput unless g is monic and squarefree.
  static CurveModel twisted(const Field& F, const Poly& g);
  int extension_degree() const noexcept { return 1; }
};

}  // namespace ffpat
