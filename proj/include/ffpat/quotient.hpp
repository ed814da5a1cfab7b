#pragma once

#include <cstdint>
#include <vector>

#include "ffpat/measure.hpp"

namespace ffpat {

/// F_q[t] / N with canonical representatives of degree < deg N.
class QuotientRing {
 public:
  /// Throws InvalidInput unless N is monic and nonconstant, NotAdmissible when
  /// some irreducible factor of N has degree < k.
  static QuotientRing make(const Field& F, const Poly& N, int k);

  const Field& field() const noexcept { return F_; }
  const Poly& modulus() const noexcept { return N_; }
  int degree() const noexcept { return N_.degree(); }
  std::uint64_t size() const noexcept { return size_; }
  Poly reduce(const Poly& x) const { return mod(F_, x, N_); }
  std::uint64_t index(const Poly& x) const { return to_index(F_, reduce(x)); }

 private:
  QuotientRing(const Field& F, Poly N);
  Field F_;
  Poly N_;
  std::uint64_t size_;
};

/// nu~_N(x + N) = nu(x) on representatives; nu must cover deg < deg N.
MeasureTable lift_measure(const MeasureTable& nu, const QuotientRing& ring);

/// Vertices J = polynomials of degree < k (index order); e_j = J \ {j}.
class HyperGraph {
 public:
  HyperGraph(const Field& F, int k);
  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Poly& vertex(std::size_t i) const { return vertices_[i]; }
  /// Vertex indices of e_j in ascending order; bit p of an omega mask refers
  /// to edge(j)[p].
  std::vector<std::size_t> edge(std::size_t j) const;

 private:
  int k_;
  std::vector<Poly> vertices_;
};

/// nu~_N(sum_{i in e_j} (i - j) x_i); `x` has one residue per vertex, the
/// entry at j is ignored.
double hypergraph_measure(const QuotientRing& ring, const MeasureTable& lifted, const HyperGraph& G, std::size_t j,
                          const std::vector<Poly>& x);

/// x^(omega): coordinate i in e_j taken from x1 where omega selects it, else x0.
std::vector<Poly> select(const HyperGraph& G, std::size_t j, std::uint64_t omega, const std::vector<Poly>& x0,
                         const std::vector<Poly>& x1);

/// psi_omega(x1) = sum_{omega_i = 1} (i - j) x1_i and b_omega = sum_{omega_i = 0} (i - j) x0_i, reduced mod N.
struct Decomposition {
  Poly psi;
  Poly b;
};
Decomposition decompose(const QuotientRing& ring, const HyperGraph& G, std::size_t j, std::uint64_t omega,
                        const std::vector<Poly>& x0, const std::vector<Poly>& x1);

/// q^{-|e_j| deg N} sum over x1 in ring^{e_j} of prod_{omega in Omega} nu~_{N,j}(x^(omega)), x0 fixed.
double condition_one_estimate(const QuotientRing& ring, const MeasureTable& lifted, const HyperGraph& G,
                              std::size_t j, const std::vector<std::uint64_t>& Omega, const std::vector<Poly>& x0,
                              std::uint64_t budget = std::uint64_t{1} << 24, int threads = 1);

/// The double sum over x0, x1 in ring^J of prod_j prod_{omega in Omega_j}
/// nu~_{N,j}(x^(omega)), divided by the number of (x0, x1) tuples.
double condition_two_estimate(const QuotientRing& ring, const MeasureTable& lifted, const HyperGraph& G,
                              const std::vector<std::vector<std::uint64_t>>& Omegas,
                              std::uint64_t budget = std::uint64_t{1} << 24, int threads = 1);

}  // namespace ffpat
