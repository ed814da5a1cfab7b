#pragma once

// Enumerates an affine F_p-subspace {base + sum_k c_k gen_k : c_k in F_p} of
// polynomials with fewer than n coefficients, reporting each point by its
// base-q index. Every sieve in the library (irreducibles, Moebius, Lambda over a
// box) is a loop over such cosets. Visit order is fixed by the generator order.

#include <bit>
#include <cstdint>
#include <vector>

#include "ffpat/field.hpp"
#include "ffpat/poly.hpp"

namespace ffpat::detail {

class AffineWalker {
 public:
  /// `coset_gens` are F_q-generators (e.g. d * t^i); they are expanded into
  /// F_p-generators beta_j * gen for the power basis beta_j of F_q / F_p.
  AffineWalker(const Field& F, int n, const Poly& base, const std::vector<Poly>& coset_gens) : F_(F), n_(n) {
    qpow_.resize(static_cast<std::size_t>(n) + 1);
    qpow_[0] = 1;
    for (int i = 1; i <= n; ++i) qpow_[i] = qpow_[i - 1] * static_cast<std::uint64_t>(F.q());
    digits_.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n && i <= base.degree(); ++i) digits_[i] = base[i];
    base_index_ = 0;
    for (int i = n - 1; i >= 0; --i) base_index_ = base_index_ * static_cast<std::uint64_t>(F.q()) + digits_[i];

    binary_ = F.q() == 2;
    Elem beta = 1;
    std::vector<Elem> basis;
    for (int j = 0; j < F.e(); ++j) {
      basis.push_back(beta);
      beta = static_cast<Elem>(beta * F.p());  // index p^j is the power-basis element
    }
    for (const auto& g : coset_gens) {
      for (Elem b : basis) {
        Gen gen;
        for (int i = 0; i <= g.degree() && i < n; ++i) {
          const Elem c = F.mul(g[i], b);
          if (c) gen.terms.push_back({i, c});
        }
        if (binary_) {
          gen.mask = 0;
          for (auto& t : gen.terms) gen.mask |= std::uint64_t{1} << t.pos;
        }
        gens_.push_back(std::move(gen));
      }
    }
  }

  std::uint64_t count() const {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < gens_.size(); ++i) c *= static_cast<std::uint64_t>(F_.p());
    return c;
  }

  template <class Visit>
  void run(Visit&& visit) {
    if (binary_) {
      std::uint64_t idx = base_index_;
      visit(idx);
      const std::uint64_t total = std::uint64_t{1} << gens_.size();
      for (std::uint64_t v = 1; v < total; ++v) {
        idx ^= gens_[static_cast<std::size_t>(std::countr_zero(v))].mask;
        visit(idx);
      }
      return;
    }
    std::vector<Elem> x = digits_;
    std::uint64_t idx = base_index_;
    const int p = F_.p();
    std::vector<int> counter(gens_.size(), 0);
    auto apply = [&](const Gen& g) {
      for (const auto& t : g.terms) {
        Elem& slot = x[static_cast<std::size_t>(t.pos)];
        const Elem next = F_.add(slot, t.c);
        idx += (static_cast<std::uint64_t>(next) - static_cast<std::uint64_t>(slot)) * qpow_[t.pos];
        slot = next;
      }
    };
    visit(idx);
    while (true) {
      std::size_t k = 0;
      while (k < gens_.size() && counter[k] == p - 1) {
        counter[k] = 0;
        apply(gens_[k]);
        ++k;
      }
      if (k == gens_.size()) break;
      ++counter[k];
      apply(gens_[k]);
      visit(idx);
    }
  }

 private:
  struct Term {
    int pos;
    Elem c;
  };
  struct Gen {
    std::vector<Term> terms;
    std::uint64_t mask = 0;
  };

  Field F_;
  int n_;
  bool binary_ = false;
  std::vector<std::uint64_t> qpow_;
  std::vector<Elem> digits_;
  std::uint64_t base_index_ = 0;
  std::vector<Gen> gens_;
};

}  // namespace ffpat::detail
