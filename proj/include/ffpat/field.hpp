#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ffpat {

/// Element of F_q stored as its index sum_i c_i p^i, where (c_0, ..., c_{e-1})
/// are the F_p coordinates in the power basis of the modulus.
using Elem = std::uint8_t;

inline constexpr int kMaxFieldSize = 32;

/// The finite field F_q, q = p^e <= 32, with all operations table driven.
/// Copies share the tables, so passing a Field by value is cheap.
class Field {
 public:
  /// Builds F_{p^e}; for e > 1 the modulus is the first monic irreducible of
  /// degree e over F_p in ascending base-p order of its lower coefficients.
  static Field make(int p, int e = 1);

  int p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  int q() const noexcept { return q_; }

  /// Modulus over F_p, constant term first, monic of degree e. Empty when e == 1.
  const std::vector<int>& modulus() const noexcept { return tables_->modulus; }

  Elem add(Elem a, Elem b) const noexcept { return tables_->add[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const noexcept { return tables_->sub[a * q_ + b]; }
  Elem mul(Elem a, Elem b) const noexcept { return tables_->mul[a * q_ + b]; }
  Elem neg(Elem a) const noexcept { return tables_->neg[a]; }
  /// Throws DivideByZero for a == 0.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t n) const noexcept;

  /// Image of an integer in the prime subfield.
  Elem from_int(long long v) const noexcept;

  std::string format(Elem a) const;
  /// Accepts "c" for prime fields and "c0/c1/.../c_{e-1}" for extensions.
  Elem parse(std::string_view text) const;

  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.tables_->modulus == b.tables_->modulus;
  }

 private:
  struct Tables {
    std::vector<int> modulus;
    std::vector<Elem> add, sub, mul, neg, inv;
  };

  Field(int p, int e, std::shared_ptr<const Tables> t) : p_(p), e_(e), q_(1), tables_(std::move(t)) {
    for (int i = 0; i < e; ++i) q_ *= p;
  }

  int p_;
  int e_;
  int q_;
  std::shared_ptr<const Tables> tables_;
};

bool is_prime_integer(long long n) noexcept;

}  // namespace ffpat
