#include "ffpat/patterns.hpp"

#include <memory>
#include <set>

#include "ffpat/divisor.hpp"
#include "ffpat/error.hpp"
#include "ffpat/measure.hpp"

namespace ffpat {

nlohmann::json PrimeClassCertificate::to_json(const Field& F) const {
  nlohmann::json j;
  j["q"] = q;
  j["a"] = format_poly(F, cls.a);
  j["m"] = format_poly(F, cls.m);
  j["s"] = cls.s;
  j["class_size"] = elements.size();
  if (twist)
    j["twist"] = {{"W", format_poly(F, twist->W)}, {"alpha", format_poly(F, twist->alpha)}};
  else
    j["twist"] = nullptr;
  if (equivalence) j["equivalence"] = {{"M", format_poly(F, equivalence->first)}, {"residue", format_poly(F, equivalence->second)}};
  j["elements"] = nlohmann::json::array();
  for (const auto& e : elements) j["elements"].push_back(format_poly(F, e));
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : witnesses) {
    if (w.is_single_prime()) {
      j["witnesses"].push_back("irreducible");
    } else {
      Divisor::Map m;
      for (const auto& [p, e] : w.factors) m.emplace(p, e);
      j["witnesses"].push_back(format_divisor(F, Divisor(std::move(m))));
    }
  }
  j["valid"] = valid;
  return j;
}

std::vector<Poly> enumerate_class(const Field& F, const TruncatedClass& c) {
  if (c.m.is_zero()) throw Error(Errc::ZeroModulus, "class modulus is zero");
  if (c.s < 0) throw Error(Errc::InvalidInput, "class window must be >= 0");
  std::vector<Poly> out;
  const std::uint64_t n = ipow(static_cast<std::uint64_t>(F.q()), c.s);
  for (std::uint64_t h = 0; h < n; ++h) out.push_back(add(F, c.a, mul(F, c.m, from_index(F, h))));
  return out;
}

namespace {

Poly apply_twist(const Field& F, const Poly& f, const std::optional<Twist>& tw) {
  return tw ? add(F, mul(F, tw->W, f), tw->alpha) : f;
}

}  // namespace

PrimeClassCertificate is_prime_class(const Field& F, const TruncatedClass& c, const std::optional<Twist>& twist) {
  PrimeClassCertificate cert;
  cert.q = F.q();
  cert.cls = c;
  cert.twist = twist;
  cert.elements = enumerate_class(F, c);
  cert.valid = true;
  for (const auto& f : cert.elements) {
    const Poly g = apply_twist(F, f, twist);
    if (g.is_zero()) {
      cert.witnesses.push_back(Factorization{0, {}});
      cert.valid = false;
      continue;
    }
    Factorization fac = factor(F, g);
    cert.valid = cert.valid && fac.is_single_prime();
    cert.witnesses.push_back(std::move(fac));
  }
  return cert;
}

nlohmann::json SearchReport::summary() const {
  return {{"classes_total", classes_total},
          {"classes_checked", classes_checked},
          {"budget_exceeded", budget_exceeded},
          {"exhausted", exhausted()},
          {"certificates", certificates.size()},
          {"distinct_divisors", distinct_divisors}};
}

namespace {

// One (m, deg a) slice of the search space.
struct Task {
  Poly m;
  int da;
  std::vector<int> free;  // coefficient positions of a below da that vary
  std::uint64_t count;
};

struct Space {
  const Field& F;
  int s;
  std::optional<Twist> twist;
  std::optional<std::pair<Poly, Poly>> equivalence;
  int prime_sieve_degree;
  std::unique_ptr<IrreducibleSieve> sieve;

  bool prime(const Poly& g) const {
    if (g.is_zero() || g.degree() < 1) return false;
    if (sieve && g.degree() <= sieve->max_degree()) return sieve->is_irreducible(monic(F, g));
    return is_irreducible(F, g);
  }
};

std::vector<int> free_positions(int da, int dm, int s) {
  std::vector<int> out;
  for (int i = 0; i < da; ++i)
    if (i < dm || i >= dm + s) out.push_back(i);
  return out;
}

SearchReport run_tasks(const Space& space, const std::vector<Task>& tasks, std::uint64_t budget, int threads) {
  const Field& F = space.F;
  SearchReport rep;
  std::vector<std::uint64_t> offset(tasks.size() + 1, 0);
  for (std::size_t i = 0; i < tasks.size(); ++i) offset[i + 1] = offset[i] + tasks[i].count;
  rep.classes_total = offset.back();
  rep.classes_checked = std::min(budget, rep.classes_total);
  rep.budget_exceeded = rep.classes_total > budget;

  std::vector<std::vector<PrimeClassCertificate>> found(tasks.size());
  parallel_blocks(tasks.size(), 1, threads, [&](std::uint64_t ti, std::uint64_t, std::uint64_t) {
    const Task& task = tasks[static_cast<std::size_t>(ti)];
    if (offset[ti] >= budget) return;
    const std::uint64_t limit = std::min(task.count, budget - offset[ti]);
    const auto q = static_cast<std::uint64_t>(F.q());
    const std::uint64_t hs = ipow(q, space.s);
    std::vector<Poly> mh;  // m h for every h of degree < s
    for (std::uint64_t h = 0; h < hs; ++h) mh.push_back(mul(F, task.m, from_index(F, h)));
    std::vector<Elem> coeffs(static_cast<std::size_t>(task.da) + 1, 0);
    coeffs.back() = 1;
    for (std::uint64_t idx = 0; idx < limit; ++idx) {
      std::uint64_t rest = idx;
      for (int pos : task.free) {
        coeffs[static_cast<std::size_t>(pos)] = static_cast<Elem>(rest % q);
        rest /= q;
      }
      const Poly a(coeffs);
      if (space.equivalence && !mod(F, sub(F, a, space.equivalence->second), space.equivalence->first).is_zero()) continue;
      bool ok = true;
      for (std::uint64_t h = 0; h < hs && ok; ++h) ok = space.prime(apply_twist(F, add(F, a, mh[h]), space.twist));
      if (!ok) continue;
      PrimeClassCertificate cert = is_prime_class(F, {a, task.m, space.s}, space.twist);
      cert.equivalence = space.equivalence;
      found[static_cast<std::size_t>(ti)].push_back(std::move(cert));
    }
  });
  std::set<Poly> divisors;
  for (auto& v : found)
    for (auto& c : v) {
      for (const auto& e : c.elements) divisors.insert(monic(F, apply_twist(F, e, c.twist)));
      rep.certificates.push_back(std::move(c));
    }
  rep.distinct_divisors = divisors.size();
  return rep;
}

std::unique_ptr<IrreducibleSieve> sieve_for(const Field& F, int top) {
  if (top < 1 || ipow(static_cast<std::uint64_t>(F.q()), top) > (std::uint64_t{1} << 24)) return nullptr;
  return std::make_unique<IrreducibleSieve>(F, top);
}

}  // namespace

SearchReport search(const Field& F, const SearchOptions& opt) {
  if (opt.s < 1) throw Error(Errc::InvalidInput, "search needs s >= 1");
  if (opt.deg_a_max < 0) throw Error(Errc::InvalidInput, "deg_a_max must be >= 0");
  if (opt.twist && (opt.twist->W.is_zero() || gcd(F, opt.twist->alpha, opt.twist->W).degree() != 0))
    throw Error(Errc::AlphaNotCoprime, "alpha must be coprime to W");
  const int dm_max = opt.deg_m_max >= 0 ? opt.deg_m_max : opt.deg_a_max - opt.s;
  std::vector<Task> tasks;
  const auto q = static_cast<std::uint64_t>(F.q());
  for (int dm = 0; dm <= dm_max; ++dm) {
    for (const Poly& m : enumerate_monic(F, dm)) {
      for (int da = 0; da <= opt.deg_a_max; ++da) {
        if (opt.degree_guard ? da < dm + opt.s : (da >= dm && da < dm + opt.s)) continue;
        auto free = free_positions(da, dm, opt.s);
        const std::uint64_t count = ipow(q, static_cast<int>(free.size()));
        tasks.push_back({m, da, std::move(free), count});
      }
    }
  }
  const int twist_deg = opt.twist ? std::max(opt.twist->W.degree(), 0) : 0;
  Space space{F, opt.s, opt.twist, std::nullopt, 0, sieve_for(F, opt.deg_a_max + twist_deg)};
  return run_tasks(space, tasks, opt.budget, opt.threads);
}

SearchReport search_in_class(const Field& F, const InClassOptions& opt) {
  if (opt.s < 1) throw Error(Errc::InvalidInput, "search needs s >= 1");
  if (opt.M.is_zero()) throw Error(Errc::ZeroModulus, "class modulus M is zero");
  if (opt.W.is_zero() || gcd(F, opt.alpha, opt.W).degree() != 0)
    throw Error(Errc::AlphaNotCoprime, "alpha must be coprime to W");
  const Poly M = monic(F, opt.M);
  const int dm_max = opt.deg_m_max >= 0 ? opt.deg_m_max : opt.r - 1 - opt.s;
  std::vector<Task> tasks;
  const auto q = static_cast<std::uint64_t>(F.q());
  for (int dm = M.degree(); dm <= dm_max; ++dm) {
    for (const Poly& cofactor : enumerate_monic(F, dm - M.degree())) {
      const Poly m = mul(F, M, cofactor);
      for (int da = dm + opt.s; da < opt.r; ++da) {
        auto free = free_positions(da, dm, opt.s);
        const std::uint64_t count = ipow(q, static_cast<int>(free.size()));
        tasks.push_back({m, da, std::move(free), count});
      }
    }
  }
  Space space{F, opt.s, Twist{opt.W, opt.alpha}, std::make_pair(M, mod(F, opt.residue, M)), 0,
              sieve_for(F, opt.r - 1 + std::max(opt.W.degree(), 0))};
  return run_tasks(space, tasks, opt.budget, opt.threads);
}

}  // namespace ffpat
