#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffpat/field.hpp"

namespace ffpat {

/// Dense polynomial over F_q, constant term first, never carrying trailing
/// zeros. The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Elem> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(Elem c) { return Poly(std::vector<Elem>{c}); }
  static Poly one() { return constant(1); }
  /// c * t^n
  static Poly monomial(Elem c, int n);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  Elem lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](int i) const noexcept {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Elem{0};
  }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }

  friend bool operator==(const Poly&, const Poly&) = default;
  /// Canonical order: by degree, then by coefficients from the top down
  /// (equivalently, by base-q index within a degree).
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Elem> c_;
};

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly neg(const Field& F, const Poly& a);
Poly scale(const Field& F, const Poly& a, Elem c);
/// Multiplication by t^n.
Poly shift(const Poly& a, int n);
/// Schoolbook, switching to Karatsuba once both operands exceed degree 64.
Poly mul(const Field& F, const Poly& a, const Poly& b);
/// Quotient and remainder; throws DivideByZero when b == 0.
std::pair<Poly, Poly> divrem(const Field& F, const Poly& a, const Poly& b);
Poly mod(const Field& F, const Poly& a, const Poly& b);
Poly quo(const Field& F, const Poly& a, const Poly& b);
bool divides(const Field& F, const Poly& d, const Poly& a);
/// Monic normalization; the zero polynomial maps to itself.
Poly monic(const Field& F, const Poly& a);
/// Monic gcd; gcd(0, 0) == 0.
Poly gcd(const Field& F, const Poly& a, const Poly& b);
Poly lcm(const Field& F, const Poly& a, const Poly& b);

struct ExtendedGcd {
  Poly g, s, t;  ///< s*a + t*b == g, g monic
};
ExtendedGcd extended_gcd(const Field& F, const Poly& a, const Poly& b);
/// a^{-1} mod m when gcd(a, m) == 1.
std::optional<Poly> inverse_mod(const Field& F, const Poly& a, const Poly& m);

Poly derivative(const Field& F, const Poly& a);
Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Field& F, Poly base, std::uint64_t e, const Poly& m);
/// a^q mod m, the q-power Frobenius on F_q[t]/(m).
Poly frobenius_mod(const Field& F, const Poly& a, const Poly& m);
/// Evaluates a(t) at t = x.
Elem evaluate(const Field& F, const Poly& a, Elem x);

/// Base-q index of the coefficient vector; the constant term is least
/// significant. This is the enumeration order used everywhere.
std::uint64_t to_index(const Field& F, const Poly& a);
Poly from_index(const Field& F, std::uint64_t index);
/// q^n as an integer; throws InvalidInput on overflow past 2^63.
std::uint64_t ipow(std::uint64_t q, int n);

/// Comma-separated coefficients, constant first: "1,1,1" is t^2+t+1 over F_2.
/// The zero polynomial is written "0".
std::string format_poly(const Field& F, const Poly& a);
Poly parse_poly(const Field& F, std::string_view text);
/// Human-readable form such as "t^3+t+1"; diagnostics only.
std::string pretty(const Field& F, const Poly& a);

/// The q^d monic polynomials of degree d, in ascending index order of their
/// lower coefficients. Index ranges can be handed to independent workers.
class MonicRange {
 public:
  MonicRange(Field F, int d, std::uint64_t begin, std::uint64_t end);
  MonicRange(Field F, int d);

  std::uint64_t size() const noexcept { return end_ - begin_; }
  Poly operator[](std::uint64_t i) const;
  MonicRange subrange(std::uint64_t begin, std::uint64_t end) const;

  class iterator {
   public:
    using value_type = Poly;
    using difference_type = std::ptrdiff_t;
    iterator(const MonicRange* r, std::uint64_t i) : r_(r), i_(i) {}
    Poly operator*() const { return (*r_)[i_]; }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const MonicRange* r_;
    std::uint64_t i_;
  };
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

 private:
  Field F_;
  int d_;
  std::uint64_t begin_, end_;
};

MonicRange enumerate_monic(const Field& F, int d);

}  // namespace ffpat
