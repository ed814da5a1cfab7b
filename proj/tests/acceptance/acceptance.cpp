// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Reference values are computed here with the naive arithmetic in oracle.hpp.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../oracle.hpp"
#include "ffpat/cli/output.hpp"
#include "ffpat/cli/run.hpp"
#include "ffpat/correlate.hpp"
#include "ffpat/error.hpp"
#include "ffpat/irreducible.hpp"
#include "ffpat/patterns.hpp"
#include "ffpat/quotient.hpp"
#include "ffpat/sieve.hpp"
#include "ffpat/zeta.hpp"

using namespace ffpat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SieveParams q2_params(int r, double R) {
  return make_params(CurveModel::rational(Field::make(2)), r, 1, 1, Poly::one(), BumpFn::mollifier(), R);
}

// 1 -------------------------------------------------------------------------
Outcome irreducible_counts() {
  std::string detail;
  bool ok = true;
  for (int q : {2, 3, 5}) {
    const auto t0 = Clock::now();
    const IrreducibleSieve sieve(Field::make(q), 12);
    for (int d = 1; d <= 12; ++d) ok = ok && sieve.count(d) == static_cast<std::uint64_t>(oracle::necklace(q, d));
    const double t = seconds_since(t0);
    if (q == 2) ok = ok && t < 60;
    detail += fmt("q=%d sieve %.2fs; ", q, t);
  }
  // q = 2 once more, one Ben-Or test per polynomial
  const auto t0 = Clock::now();
  const Field F = Field::make(2);
  for (int d = 1; d <= 12; ++d) {
    std::uint64_t n = 0;
    for (const Poly& f : enumerate_monic(F, d)) n += is_irreducible(F, f);
    ok = ok && n == static_cast<std::uint64_t>(oracle::necklace(2, d));
  }
  const double t = seconds_since(t0);
  ok = ok && t < 60;
  detail += fmt("q=2 per-polynomial scan %.2fs", t);
  return {ok, detail};
}

// 2 -------------------------------------------------------------------------
Outcome lambda_on_primes() {
  const BumpFn b = BumpFn::mollifier();
  std::uint64_t checked = 0, bad = 0;
  for (int q : {2, 3}) {
    const Field F = Field::make(q);
    const IrreducibleSieve sieve(F, 8);
    for (int d = 4; d <= 8; ++d)
      for (const Poly& f : sieve.list(d)) {
        ++checked;
        bad += lambda_R(F, f, 4.0, b) != 1.0;
      }
  }
  return {bad == 0 && checked > 0, fmt("%llu primes of degree 4..8, %llu not exactly 1", (unsigned long long)checked,
                                       (unsigned long long)bad)};
}

// 3 -------------------------------------------------------------------------
Outcome euler_convergence() {
  const double err12 = std::abs(euler_truncated(2, Complex{2, 0}, 12) - 2.0);
  // least-squares slope of ln|error| against B
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int B = 4; B <= 12; ++B) {
    const double y = std::log(std::abs(euler_truncated(2, Complex{2, 0}, B) - 2.0));
    sx += B;
    sy += y;
    sxx += B * B;
    sxy += B * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double rel = std::abs(slope + std::log(2.0)) / std::log(2.0);
  return {err12 <= 1e-3 && rel <= 0.2, fmt("|E(12)-2| = %.3e, slope %.4f vs -ln2 (off by %.1f%%)", err12, slope, 100 * rel)};
}

// 4 -------------------------------------------------------------------------
Outcome cphi() {
  const auto t0 = Clock::now();
  const CphiReport rep = c_phi_report(BumpFn::mollifier());
  const double t = seconds_since(t0);
  return {rep.rel_diff <= 1e-6 && rep.value > 0 && t < 10,
          fmt("c_phi = %.15g, schemes differ by %.2e relative, %.2fs", rep.value, rep.rel_diff, t)};
}

// 5 -------------------------------------------------------------------------
Outcome box_means() {
  double prev_gap = INFINITY;
  bool monotone = true;
  std::string detail;
  double last = 0;
  for (int r : {16, 20, 24}) {
    const auto t0 = Clock::now();
    const MeasureTable nu = tabulate_nu(q2_params(r, r), r);
    last = nu.mean();
    const double gap = std::abs(1 - last);
    monotone = monotone && gap < prev_gap;
    prev_gap = gap;
    detail += fmt("r=%d mean %.6f (%.1fs); ", r, last, seconds_since(t0));
  }
  detail += "R = r";
  return {monotone && std::abs(last - 1) <= 0.25, detail};
}

// 6 -------------------------------------------------------------------------
Outcome unit_measure() {
  std::mt19937_64 rng(6);
  int cross_ok = 0, cond_ok = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const Field F = Field::make(p);
    // random nondegenerate system
    LinearSystem sys;
    while (true) {
      sys.m = 1 + static_cast<int>(rng() % 2);
      const int s = 1 + static_cast<int>(rng() % 3);
      sys.forms.assign(static_cast<std::size_t>(s), {});
      sys.shifts.clear();
      for (auto& row : sys.forms)
        for (int c = 0; c < sys.m; ++c) row.push_back(Poly::constant(static_cast<Elem>(rng() % static_cast<std::uint64_t>(p))));
      for (int j = 0; j < s; ++j) sys.shifts.push_back(from_index(F, rng() % 16));
      try {
        sys.validate(F, 1);
        break;
      } catch (const Error&) {
      }
    }
    const int window = p == 2 ? 6 : 4;
    const auto rep = cross_correlation(sys, MeasureTable::unit(F, 8), window);
    cross_ok += rep.estimate == 1.0;

    const oracle::P N = oracle::monic_from(p, 1 + static_cast<int>(rng() % 4), rng());
    const QuotientRing ring = QuotientRing::make(F, oracle::to_poly(N), 1);
    const HyperGraph G(F, 1);
    const MeasureTable lifted = lift_measure(MeasureTable::unit(F, ring.degree()), ring);
    const std::size_t j = rng() % G.size();
    std::vector<std::uint64_t> Omega;
    for (int i = 0; i < 3; ++i) Omega.push_back(rng() % (std::uint64_t{1} << (G.size() - 1)));
    std::vector<Poly> x0;
    for (std::size_t i = 0; i < G.size(); ++i) x0.push_back(from_index(F, rng() % ring.size()));
    cond_ok += condition_one_estimate(ring, lifted, G, j, Omega, x0) == 1.0;
  }
  return {cross_ok == 50 && cond_ok == 50, fmt("cross_correlation %d/50, condition_one_estimate %d/50 exactly 1", cross_ok, cond_ok)};
}

// 7 -------------------------------------------------------------------------
struct OmegaCase {
  int q;
  LinearSystem sys;
  std::vector<Poly> targets;
  Rational expect;
};

Outcome omega_checks() {
  const Poly one{1}, x1{1}, zero{};
  const Poly a2{1, 1, 1}, c1{1, 1, 0, 1}, c2{1, 0, 1, 1}, q4{1, 1, 0, 0, 1};
  const Poly t{0, 1}, t1{1, 1};
  const Poly s2{1, 0, 1};  // t^2+1 over F_3
  auto sys1 = [](Poly c, Poly b) { return LinearSystem{1, {{c}}, {b}}; };
  const LinearSystem two{1, {{x1}, {x1}}, {zero, one}};
  const LinearSystem ident2{2, {{x1, zero}, {zero, x1}}, {zero, zero}};
  const LinearSystem tri2{2, {{x1, zero}, {x1, x1}}, {zero, zero}};
  // W = t (t+1) over F_2 and t (t+1) (t+2) over F_3, alpha = 1: the conditions read pi | W psi(x) + W b + 1
  std::vector<OmegaCase> cases = {
      {2, sys1(x1, zero), {a2}, Rational(1, 4)},
      {2, sys1(x1, zero), {c1}, Rational(1, 8)},
      {2, sys1(x1, zero), {c2}, Rational(1, 8)},
      {2, sys1(x1, zero), {q4}, Rational(1, 16)},
      {2, sys1(x1, zero), {t}, Rational(0)},
      {2, sys1(x1, zero), {t1}, Rational(0)},
      {2, sys1(x1, zero), {one}, Rational(1)},
      {2, sys1(x1, zero), {Poly{1, 0, 0, 0, 1, 1}}, Rational(1, 32)},  // (t^2+t+1)(t^3+t+1)
      {2, two, {a2, a2}, Rational(0)},
      {2, two, {a2, c1}, Rational(1, 32)},
      {2, ident2, {a2, a2}, Rational(1, 16)},
      {2, tri2, {a2, a2}, Rational(1, 16)},
      {2, LinearSystem{2, {{x1, zero}}, {zero}}, {a2}, Rational(1, 4)},
      {2, LinearSystem{2, {{x1, x1}}, {one}}, {c1}, Rational(1, 8)},
      {2, sys1(x1, Poly{0, 0, 1}), {a2}, Rational(1, 4)},
      {2, two, {t, a2}, Rational(0)},
      {3, sys1(Poly{2}, zero), {s2}, Rational(1, 9)},
      {3, sys1(x1, zero), {Poly{2, 1, 0, 1, 1}}, Rational(1, 81)},  // (t^2+1)(t^2+t+2)
      {3, LinearSystem{1, {{x1}, {x1}}, {zero, one}}, {s2, s2}, Rational(0)},
      {3, LinearSystem{2, {{x1, zero}, {zero, x1}, {x1, x1}}, {zero, zero, zero}}, {s2, s2, s2}, Rational(0)},
  };
  int hand_ok = 0;
  for (const auto& c : cases) {
    const Field F = Field::make(c.q);
    const SieveParams P = make_params(CurveModel::rational(F), 12, 1, 1, Poly::one(), BumpFn::mollifier(), 6.0);
    hand_ok += omega_local(c.sys, c.targets, P) == c.expect;
  }

  std::mt19937_64 rng(7);
  const Field F = Field::make(2);
  const SieveParams P = q2_params(12, 6.0);
  int crt_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    oracle::P d;
    do d = oracle::monic_from(2, 1 + static_cast<int>(rng() % 4), rng());
    while (oracle::mobius(d, 2) == 0);
    std::vector<oracle::P> divs;
    for (int k = 0; k <= oracle::deg(d); ++k)
      for (std::uint64_t i = 0; i < oracle::pw(2, k); ++i)
        if (oracle::rem(d, oracle::monic_from(2, k, i), 2).empty()) divs.push_back(oracle::monic_from(2, k, i));
    const LinearSystem sys = trial % 2 ? two : tri2;
    std::vector<Poly> targets = {oracle::to_poly(d), oracle::to_poly(divs[rng() % divs.size()])};
    if (trial % 4 == 0) std::swap(targets[0], targets[1]);
    crt_ok += omega_crt_check(sys, targets, P);
  }
  return {hand_ok == 20 && crt_ok == 100, fmt("hand values %d/20, CRT %d/100", hand_ok, crt_ok)};
}

// 8 -------------------------------------------------------------------------
Outcome decomposition() {
  std::mt19937_64 rng(8);
  const Field F = Field::make(2);
  const HyperGraph G(F, 1);
  int ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const oracle::P N = oracle::monic_from(2, 1 + static_cast<int>(rng() % 4), rng());
    const QuotientRing ring = QuotientRing::make(F, oracle::to_poly(N), 1);
    std::uniform_real_distribution<double> u(0, 3);
    std::vector<double> vals(static_cast<std::size_t>(ring.size()));
    for (auto& v : vals) v = u(rng);
    const MeasureTable lifted = lift_measure(MeasureTable(F, ring.degree(), vals), ring);
    const std::size_t j = rng() % G.size();
    const std::uint64_t omega = rng() % (std::uint64_t{1} << (G.size() - 1));
    std::vector<Poly> x0, x1;
    for (std::size_t i = 0; i < G.size(); ++i) {
      x0.push_back(from_index(F, rng() % ring.size()));
      x1.push_back(from_index(F, rng() % ring.size()));
    }
    const Decomposition d = decompose(ring, G, j, omega, x0, x1);
    const double direct = hypergraph_measure(ring, lifted, G, j, select(G, j, omega, x0, x1));
    const double split = lifted[ring.index(add(F, d.psi, d.b))];
    // reference argument: sum over i in e_j of (i - j) x^(omega)_i mod N
    oracle::P ref;
    const auto e = G.edge(j);
    for (std::size_t p = 0; p < e.size(); ++p) {
      const auto& src = (omega >> p & 1) ? x1 : x0;
      const auto c = oracle::sub(oracle::from_poly(G.vertex(e[p])), oracle::from_poly(G.vertex(j)), 2);
      ref = oracle::add(ref, oracle::mul(c, oracle::from_poly(src[e[p]]), 2), 2);
    }
    ref = oracle::rem(ref, N, 2);
    ok += direct == split && split == vals[static_cast<std::size_t>(to_index(F, oracle::to_poly(ref)))];
  }
  return {ok == 1000, fmt("%d/1000 instances exact", ok)};
}

// 9 -------------------------------------------------------------------------
Outcome auto_correlation_bound() {
  const Field F = Field::make(2);
  const int window = 16;
  const SieveParams P = q2_params(16, 16.0);
  const MeasureTable nu = tabulate_nu(P, window);
  std::mt19937_64 rng(9);
  auto pair = [&] {
    while (true) {
      Poly a = from_index(F, rng() % (1u << window)), b = from_index(F, rng() % (1u << window));
      if (a != b) return std::vector<Poly>{a, b};
    }
  };
  std::vector<std::vector<Poly>> family, fresh;
  for (int i = 0; i < 100; ++i) family.push_back(pair());
  for (int i = 0; i < 200; ++i) fresh.push_back(pair());
  const AutoCalibration cal = calibrate_auto(family, nu, window, P);
  int cal_ok = 0, fresh_ok = 0;
  for (const auto& y : family) cal_ok += auto_correlation(y, nu, window, P, cal).holds();
  for (const auto& y : fresh) fresh_ok += auto_correlation(y, nu, window, P, cal).holds();
  return {cal_ok == 100 && fresh_ok >= 190,
          fmt("C_fit %.6f, C_s %.2f; calibration %d/100, fresh %d/200", cal.C_fit, cal.C_s, cal_ok, fresh_ok)};
}

// 10 ------------------------------------------------------------------------
bool certificate_checks_out(const PrimeClassCertificate& c, int s) {
  if (!c.valid || c.elements.size() != oracle::pw(2, s)) return false;
  const auto a = oracle::from_poly(c.cls.a), m = oracle::from_poly(c.cls.m);
  std::set<oracle::P> seen;
  for (const Poly& f : c.elements) {
    const auto fp = oracle::from_poly(f);
    const auto h = oracle::divmod(oracle::sub(fp, a, 2), m, 2);
    if (!h.second.empty() || oracle::deg(h.first) >= s) return false;
    if (!oracle::irreducible(fp, 2)) return false;
    seen.insert(fp);
  }
  return seen.size() == c.elements.size();
}

Outcome search_runs() {
  const Field F = Field::make(2);
  SearchOptions opt;
  opt.s = 1;
  opt.deg_a_max = 3;
  const auto t0 = Clock::now();
  const SearchReport small = search(F, opt);
  const double t = seconds_since(t0);
  bool found = false;
  for (const auto& c : small.certificates)
    found |= c.cls.a == Poly{1, 1, 0, 1} && c.cls.m == Poly{0, 1, 1} && certificate_checks_out(c, 1);

  opt.s = 2;
  opt.deg_a_max = 8;
  const SearchReport big = search(F, opt);
  bool verified = !big.certificates.empty();
  for (const auto& c : big.certificates) verified = verified && certificate_checks_out(c, 2);
  const bool s2_ok = verified || (big.exhausted() && big.certificates.empty());
  std::string what = verified ? fmt("%zu verified 4-element classes", big.certificates.size())
                              : (big.exhausted() ? std::string("exhausted with no class") : std::string("unverified"));
  return {found && t < 5 && s2_ok,
          fmt("s=1: (t^3+t+1, t^2+t) %s in %.3fs; s=2, deg a <= 8: %s", found ? "found" : "missing", t, what.c_str())};
}

// 11 ------------------------------------------------------------------------
Outcome reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ffpat_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> jobs = {
      {"irreducibles", "--max-deg", "10", "--cache", "CACHE"},
      {"cphi"},
      {"measure", "--r", "12", "--R", "12", "--table", "TABLE"},
      {"correlate", "--mode", "cross", "--r", "8", "--R", "8", "--forms", "1;0|1;1|0;1", "--shifts", "0|1|0,1"},
      {"correlate", "--mode", "cross", "--r", "12", "--R", "12", "--forms", "1;0|1;1", "--shifts", "0|1", "--budget",
       "4096", "--sample", "--samples", "64", "--seed", "5"},
      {"correlate", "--mode", "auto", "--r", "10", "--R", "10", "--calibrate", "20", "--fresh", "20"},
      {"lift", "--N", "1,1,0,1,1", "--r", "8", "--R", "8", "--omega", "0|1"},
      {"search", "--s", "2", "--deg-a-max", "8"},
      {"search-in-class", "--q", "3", "--M", "0,1", "--residue", "1", "--r", "6", "--s", "1"},
  };
  int same = 0;
  std::string bad;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "4"}) {
      auto args = jobs[k];
      for (auto& a : args) {
        if (a == "CACHE") a = (dir / ("cache" + std::to_string(k) + ".txt")).string();
        if (a == "TABLE") a = (dir / ("table" + std::to_string(k) + ".csv")).string();
      }
      args.insert(args.end(), {"--threads", threads});
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      std::string files;
      for (const auto& entry : fs::directory_iterator(dir)) files += cli::read_text(entry.path().string());
      outputs.push_back(std::to_string(code) + "\n" + out.str() + files);
    }
    if (outputs[0] == outputs[1] && outputs[1] == outputs[2])
      ++same;
    else
      bad += " " + jobs[k][0];
  }
  return {same == static_cast<int>(jobs.size()),
          fmt("%d/%zu runs byte-identical over reruns and 1 vs 4 threads%s", same, jobs.size(), bad.c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"irreducible counts match the necklace formula (q = 2, 3, 5; d <= 12)", irreducible_counts},
      {"Lambda_4 is exactly 1 on primes of degree 4..8 (q = 2, 3)", lambda_on_primes},
      {"truncated Euler product converges to zeta(2) at rate 2^-B", euler_convergence},
      {"c_phi quadrature schemes agree", cphi},
      {"box mean of nu_r approaches 1 (r = 16, 20, 24)", box_means},
      {"unit measure gives exactly 1 in both correlation estimators", unit_measure},
      {"local densities: hand values and CRT factorisation", omega_checks},
      {"hypergraph decomposition identity", decomposition},
      {"auto-correlation bound (q = 2, s = 2, window 16)", auto_correlation_bound},
      {"prime class searches", search_runs},
      {"deterministic output", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed ? 1 : 0;
}
