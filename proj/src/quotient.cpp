#include "ffpat/quotient.hpp"

#include <cmath>

#include "ffpat/error.hpp"
#include "ffpat/irreducible.hpp"

namespace ffpat {

QuotientRing::QuotientRing(const Field& F, Poly N)
    : F_(F), N_(std::move(N)), size_(ipow(static_cast<std::uint64_t>(F.q()), N_.degree())) {}

QuotientRing QuotientRing::make(const Field& F, const Poly& N, int k) {
  if (!N.is_monic() || N.degree() < 1) throw Error(Errc::InvalidInput, "modulus must be monic and nonconstant");
  for (const auto& [p, e] : factor(F, N).factors)
    if (p.degree() < k) throw Error(Errc::NotAdmissible, "modulus has a factor " + pretty(F, p) + " of degree < k");
  return QuotientRing(F, N);
}

MeasureTable lift_measure(const MeasureTable& nu, const QuotientRing& ring) {
  if (nu.window() < ring.degree()) throw Error(Errc::InvalidInput, "measure window is smaller than deg N");
  nlohmann::json meta = nu.meta();
  meta["lifted_to"] = format_poly(ring.field(), ring.modulus());
  if (nu.is_unit()) {
    auto t = MeasureTable::unit(ring.field(), ring.degree());
    return t;
  }
  std::vector<double> v(static_cast<std::size_t>(ring.size()));
  for (std::uint64_t i = 0; i < ring.size(); ++i) v[static_cast<std::size_t>(i)] = nu[i];
  return MeasureTable(ring.field(), ring.degree(), std::move(v), std::move(meta));
}

HyperGraph::HyperGraph(const Field& F, int k) : k_(k) {
  if (k < 1) throw Error(Errc::InvalidInput, "k must be >= 1");
  const std::uint64_t n = ipow(static_cast<std::uint64_t>(F.q()), k);
  if (n > 64) throw Error(Errc::InvalidInput, "hypergraph too large for omega masks");
  for (std::uint64_t i = 0; i < n; ++i) vertices_.push_back(from_index(F, i));
}

std::vector<std::size_t> HyperGraph::edge(std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (i != j) out.push_back(i);
  return out;
}

namespace {

std::vector<Poly> edge_coefficients(const QuotientRing& ring, const HyperGraph& G, std::size_t j) {
  std::vector<Poly> out;
  for (std::size_t i : G.edge(j)) out.push_back(ring.reduce(sub(ring.field(), G.vertex(i), G.vertex(j))));
  return out;
}

Poly combine(const QuotientRing& ring, const std::vector<Poly>& coef, const std::vector<std::size_t>& edge,
             const std::vector<Poly>& x) {
  const Field& F = ring.field();
  Poly sum;
  for (std::size_t p = 0; p < edge.size(); ++p) sum = add(F, sum, mul(F, coef[p], x[edge[p]]));
  return ring.reduce(sum);
}

void check_assignment(const HyperGraph& G, const std::vector<Poly>& x) {
  if (x.size() != G.size()) throw Error(Errc::InvalidInput, "assignment needs one residue per vertex");
}

}  // namespace

double hypergraph_measure(const QuotientRing& ring, const MeasureTable& lifted, const HyperGraph& G, std::size_t j,
                          const std::vector<Poly>& x) {
  check_assignment(G, x);
  const Poly arg = combine(ring, edge_coefficients(ring, G, j), G.edge(j), x);
  return lifted[to_index(ring.field(), arg)];
}

std::vector<Poly> select(const HyperGraph& G, std::size_t j, std::uint64_t omega, const std::vector<Poly>& x0,
                         const std::vector<Poly>& x1) {
  check_assignment(G, x0);
  check_assignment(G, x1);
  std::vector<Poly> out = x0;
  const auto e = G.edge(j);
  for (std::size_t p = 0; p < e.size(); ++p)
    if ((omega >> p) & 1) out[e[p]] = x1[e[p]];
  return out;
}

Decomposition decompose(const QuotientRing& ring, const HyperGraph& G, std::size_t j, std::uint64_t omega,
                        const std::vector<Poly>& x0, const std::vector<Poly>& x1) {
  check_assignment(G, x0);
  check_assignment(G, x1);
  const Field& F = ring.field();
  const auto e = G.edge(j);
  const auto coef = edge_coefficients(ring, G, j);
  Decomposition d;
  for (std::size_t p = 0; p < e.size(); ++p) {
    if ((omega >> p) & 1)
      d.psi = add(F, d.psi, mul(F, coef[p], x1[e[p]]));
    else
      d.b = add(F, d.b, mul(F, coef[p], x0[e[p]]));
  }
  d.psi = ring.reduce(d.psi);
  d.b = ring.reduce(d.b);
  return d;
}

double condition_one_estimate(const QuotientRing& ring, const MeasureTable& lifted, const HyperGraph& G,
                              std::size_t j, const std::vector<std::uint64_t>& Omega, const std::vector<Poly>& x0,
                              std::uint64_t budget, int threads) {
  check_assignment(G, x0);
  const Field& F = ring.field();
  const auto e = G.edge(j);
  const auto coef = edge_coefficients(ring, G, j);
  const double log_terms = static_cast<double>(e.size()) * std::log2(static_cast<double>(ring.size()));
  if (log_terms > std::log2(static_cast<double>(budget))) throw Error(Errc::BudgetExceeded, "condition sum exceeds the budget");
  const std::uint64_t total = ipow(ring.size(), static_cast<int>(e.size()));
  const double sum = deterministic_sum(
      total,
      [&](std::uint64_t i) {
        std::vector<Poly> x1 = x0;
        for (std::size_t p = 0; p < e.size(); ++p) {
          x1[e[p]] = from_index(F, i % ring.size());
          i /= ring.size();
        }
        double prod = 1.0;
        for (std::uint64_t omega : Omega)
          prod *= lifted[to_index(F, combine(ring, coef, e, select(G, j, omega, x0, x1)))];
        return prod;
      },
      threads);
  return sum / static_cast<double>(total);
}

double condition_two_estimate(const QuotientRing& ring, const MeasureTable& lifted, const HyperGraph& G,
                              const std::vector<std::vector<std::uint64_t>>& Omegas, std::uint64_t budget,
                              int threads) {
  if (Omegas.size() != G.size()) throw Error(Errc::InvalidInput, "one Omega per vertex required");
  const Field& F = ring.field();
  const int coords = static_cast<int>(2 * G.size());
  const double log_terms = coords * std::log2(static_cast<double>(ring.size()));
  if (log_terms > std::log2(static_cast<double>(budget))) throw Error(Errc::BudgetExceeded, "condition sum exceeds the budget");
  std::vector<std::vector<Poly>> coef;
  std::vector<std::vector<std::size_t>> edges;
  for (std::size_t j = 0; j < G.size(); ++j) {
    coef.push_back(edge_coefficients(ring, G, j));
    edges.push_back(G.edge(j));
  }
  const std::uint64_t total = ipow(ring.size(), coords);
  const double sum = deterministic_sum(
      total,
      [&](std::uint64_t i) {
        std::vector<Poly> x0(G.size()), x1(G.size());
        for (auto* x : {&x0, &x1})
          for (auto& xi : *x) {
            xi = from_index(F, i % ring.size());
            i /= ring.size();
          }
        double prod = 1.0;
        for (std::size_t j = 0; j < G.size(); ++j)
          for (std::uint64_t omega : Omegas[j])
            prod *= lifted[to_index(F, combine(ring, coef[j], edges[j], select(G, j, omega, x0, x1)))];
        return prod;
      },
      threads);
  return sum / static_cast<double>(total);
}

}  // namespace ffpat
