#include "ffpat/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ffpat/cli/cache.hpp"
#include "ffpat/cli/config.hpp"
#include "ffpat/cli/output.hpp"
#include "ffpat/correlate.hpp"
#include "ffpat/error.hpp"
#include "ffpat/irreducible.hpp"
#include "ffpat/patterns.hpp"
#include "ffpat/quotient.hpp"
#include "ffpat/sieve.hpp"
#include "ffpat/zeta.hpp"

namespace ffpat::cli {

namespace {

// Boolean options; everything else takes exactly one value.
const std::vector<std::string> kFlags = {"unit", "sample", "no-guard", "dump-config"};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Field field_for(int q) {
  for (int p = 2; p <= q; ++p) {
    if (!is_prime_integer(p) || q % p) continue;
    int e = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) break;
    return Field::make(p, e);
  }
  throw Error(Errc::ConfigError, "q = " + std::to_string(q) + " is not a prime power");
}

std::vector<Poly> poly_list(const Field& F, const std::string& s) {
  std::vector<Poly> out;
  for (const auto& item : split(s, '|')) out.push_back(parse_poly(F, item));
  return out;
}

std::vector<double> double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, '|')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(Errc::ConfigError, "not a number: '" + item + "'");
    }
  }
  return out;
}

// Settings shared by every subcommand, bound to CLI11 options.
struct Common {
  int q = 2;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string out = "-";
  bool dump_config = false;
};

// Sieve parameters used by measure, correlate and lift.
struct SieveOpts {
  int r = 0;
  int k = 1;
  int w = 1;
  std::optional<double> R;
  std::string alpha = "1";
  std::string twist = "1";
  std::string bump = "mollifier";

  SieveParams make(const Field& F) const {
    const Poly g = parse_poly(F, twist);
    const CurveModel curve = g == Poly::one() ? CurveModel::rational(F) : CurveModel::twisted(F, g);
    return make_params(curve, r, k, w, parse_poly(F, alpha), BumpFn::by_label(bump), R);
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--q", c.q, "field size, a prime power <= 32")->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "seed for sampled quantities")->capture_default_str();
  sub->add_option("--out", c.out, "output file ('-' for stdout)")->capture_default_str();
  sub->add_flag("--dump-config", c.dump_config, "print the effective configuration and exit");
}

void add_sieve(CLI::App* sub, SieveOpts& s, bool r_required) {
  auto* r = sub->add_option("--r", s.r, "degree window exponent");
  if (r_required) r->required();
  sub->add_option("--k", s.k, "pattern parameter k")->capture_default_str();
  sub->add_option("--w", s.w, "W cutoff degree")->capture_default_str();
  sub->add_option("--R", s.R, "truncation parameter (default r / (8 n 2^n), n = q^k)");
  sub->add_option("--alpha", s.alpha, "residue alpha coprime to W")->capture_default_str();
  sub->add_option("--twist", s.twist, "twist polynomial g, D = (g)_0")->capture_default_str();
  sub->add_option("--bump", s.bump, "bump function label")->capture_default_str();
}

Json effective_config(const CLI::App* sub) {
  Json cfg = Json::object();
  std::vector<std::pair<std::string, std::string>> items;
  for (const CLI::Option* opt : sub->get_options()) {
    // --threads never changes a result, so it stays out of the echo and
    // outputs compare byte for byte across thread counts.
    const std::string& name = opt->get_name();
    if (name == "--help" || name == "--config" || name == "--dump-config" || name == "--threads") continue;
    if (opt->count() == 0) continue;
    const std::string key = normalize_key(opt->get_name());
    std::string value = opt->get_expected_min() == 0 ? "true" : opt->results().back();
    items.emplace_back(key, value);
  }
  std::sort(items.begin(), items.end());
  for (auto& [k, v] : items) cfg[k] = v;
  return cfg;
}

Json sieve_echo(const SieveParams& P) { return Json(P.echo()); }

// A validated job; running it may still fail with a computational error.
using Job = std::function<void()>;

struct Context {
  Common common;
  CLI::App* sub = nullptr;
  std::ostream* out = nullptr;
  Json header;

  void emit(Json body) const {
    Json doc = header;
    for (auto& [k, v] : body.items()) doc[k] = v;
    write_text(common.out, doc.dump(2) + "\n", *out);
  }
};

// ---------------------------------------------------------------------------

struct IrreduciblesCmd {
  int max_deg = 0;
  std::string cache;
  std::string verify;

  void attach(CLI::App* sub) {
    sub->add_option("--max-deg", max_deg, "largest degree")->required()->check(CLI::Range(1, 40));
    sub->add_option("--cache", cache, "cache file to write (default under $FFPAT_CACHE_DIR)");
    sub->add_option("--verify", verify, "verify an existing cache instead of building one");
  }

  Job prepare(Context& ctx) {
    const Field F = field_for(ctx.common.q);
    if (verify.empty() && cache.empty()) cache = default_cache_path(F, max_deg);
    return [this, &ctx, F] {
      Json body;
      if (!verify.empty()) {
        const IrreducibleCache c = parse_cache(F, read_text(verify));
        const CacheVerification v = verify_cache(F, c, 100, ctx.common.seed);
        body["verification"] = v.to_json();
        ctx.emit(body);
        if (!v.ok) throw Error(Errc::CorruptCache, "cache failed verification");
        return;
      }
      const IrreducibleCache c = build_cache(F, max_deg);
      Json degrees = Json::array();
      bool ok = true;
      for (int d = 1; d <= max_deg; ++d) {
        const std::uint64_t scan = c.blocks[static_cast<std::size_t>(d - 1)].size();
        const std::uint64_t necklace = count_irreducible(F.q(), d);
        ok = ok && scan == necklace;
        degrees.push_back(Json{{"degree", d}, {"scan", scan}, {"necklace", necklace}, {"match", scan == necklace}});
      }
      write_text(cache, serialize_cache(F, c), *ctx.out);
      const CacheVerification v = verify_cache(F, parse_cache(F, read_text(cache)), 100, ctx.common.seed);
      body["degrees"] = degrees;
      body["counts_match"] = ok;
      body["cache"] = cache;
      body["verification"] = v.to_json();
      ctx.emit(body);
      if (!ok || !v.ok) throw Error(Errc::CorruptCache, "irreducible counts disagree with the necklace formula");
    };
  }
};

struct LambdaCmd {
  double R = 0;
  std::string polys;
  std::string divisors;
  std::string bump = "mollifier";

  void attach(CLI::App* sub) {
    sub->add_option("--R", R, "truncation parameter")->required();
    sub->add_option("--poly", polys, "polynomials, '|'-separated");
    sub->add_option("--divisor", divisors, "divisors 'poly^mult;...', '|'-separated");
    sub->add_option("--bump", bump, "bump function label")->capture_default_str();
  }

  Job prepare(Context& ctx) {
    const Field F = field_for(ctx.common.q);
    if (!(R > 0)) throw Error(Errc::DegenerateR, "R must be positive");
    auto ps = poly_list(F, polys);
    std::vector<Divisor> ds;
    for (const auto& t : split(divisors, '|')) ds.push_back(parse_divisor(F, t));
    for (const auto& p : ps)
      if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "Lambda of the zero polynomial");
    if (ps.empty() && ds.empty()) throw Error(Errc::ConfigError, "give --poly or --divisor");
    const BumpFn b = BumpFn::by_label(bump);
    return [this, &ctx, F, ps, ds, b] {
      Json results = Json::array();
      for (const auto& p : ps) {
        const Divisor d = divisor_of(F, p);
        results.push_back(Json{{"poly", format_poly(F, p)}, {"divisor", format_divisor(F, d)}, {"lambda", lambda_R(d, R, b)}});
      }
      for (const auto& d : ds)
        results.push_back(Json{{"divisor", format_divisor(F, d)}, {"lambda", lambda_R(d, R, b)}});
      ctx.emit(Json{{"bump_label", b.label}, {"R", R}, {"results", results}});
    };
  }
};

struct CphiCmd {
  std::string bump = "mollifier";
  std::string at = "0|1|5";

  void attach(CLI::App* sub) {
    sub->add_option("--bump", bump, "bump function label")->capture_default_str();
    sub->add_option("--phi-hat-at", at, "sample points for phi_hat, '|'-separated")->capture_default_str();
  }

  Job prepare(Context& ctx) {
    const BumpFn b = BumpFn::by_label(bump);
    const auto xs = double_list(at);
    return [&ctx, b, xs] {
      const CphiReport rep = c_phi_report(b);
      Json samples = Json::array();
      for (double x : xs) {
        const Complex gl = phi_hat(x, b), tr = phi_hat_trapezoid(x, b);
        samples.push_back(Json{{"x", x}, {"re", gl.real()}, {"im", gl.imag()}, {"re_trapezoid", tr.real()}, {"im_trapezoid", tr.imag()}});
      }
      Json c;
      c["value"] = rep.value;
      c["tensor_gauss_legendre"] = rep.scheme_a;
      c["iterated_trapezoid"] = rep.scheme_b;
      c["analytic_int_dphi_squared"] = rep.analytic;
      c["relative_difference"] = rep.rel_diff;
      c["imaginary_residue"] = rep.imag_residue;
      c["T"] = rep.T;
      ctx.emit(Json{{"bump_label", b.label}, {"c_phi", c}, {"phi_hat", samples}});
    };
  }
};

struct MeasureCmd {
  SieveOpts sieve;
  int window = -1;
  std::string table;

  void attach(CLI::App* sub) {
    add_sieve(sub, sieve, true);
    sub->add_option("--window", window, "box {deg x < window} (default r)");
    sub->add_option("--table", table, "CSV file for the tabulated values");
  }

  Job prepare(Context& ctx) {
    const Field F = field_for(ctx.common.q);
    if (window < 0) window = sieve.r;
    if (ipow(static_cast<std::uint64_t>(F.q()), window) > (std::uint64_t{1} << 28))
      throw Error(Errc::ConfigError, "window too large to tabulate");
    auto P = std::make_shared<SieveParams>(sieve.make(F));
    ctx.header["params"]["sieve"] = sieve_echo(*P);
    return [this, &ctx, F, P] {
      const MeasureTable T = tabulate_nu(*P, window);
      double lo = INFINITY;
      for (std::uint64_t i = 0; i < T.size(); ++i) lo = std::min(lo, T[i]);
      ctx.emit(Json{{"window", window}, {"terms", T.size()}, {"mean", T.mean(ctx.common.threads)}, {"min", lo}, {"max", T.max()}});
      if (!table.empty()) {
        CsvWriter csv(ctx.header["params"], {"x", "nu"});
        for (std::uint64_t i = 0; i < T.size(); ++i) csv.row({format_poly(F, from_index(F, i)), fmt17(T[i])});
        write_text(table, csv.str(), *ctx.out);
      }
    };
  }
};

struct CorrelateCmd {
  SieveOpts sieve;
  std::string mode;
  int window = -1;
  std::string forms = "1";
  std::string shifts = "0";
  bool unit = false;
  std::uint64_t budget = std::uint64_t{1} << 26;
  bool sample = false;
  std::uint64_t samples = 4096;
  std::string targets;
  std::string t, tp;
  int B = 0;
  std::string y;
  int calibrate = 100;
  int fresh = 200;
  int s = 2;
  std::string csv;

  void attach(CLI::App* sub) {
    add_sieve(sub, sieve, true);
    sub->add_option("--mode", mode, "cross | auto | omega | euler")
        ->required()
        ->check(CLI::IsMember({"cross", "auto", "omega", "euler"}));
    sub->add_option("--window", window, "box {deg x < window} (default r)");
    sub->add_option("--forms", forms, "rows '|'-separated, coefficients ';'-separated")->capture_default_str();
    sub->add_option("--shifts", shifts, "one shift per form, '|'-separated")->capture_default_str();
    sub->add_flag("--unit", unit, "replace nu by the unit measure");
    sub->add_option("--budget", budget, "largest exhaustive sum")->capture_default_str();
    sub->add_flag("--sample", sample, "sample when the budget is exceeded");
    sub->add_option("--samples", samples, "samples per stratum")->capture_default_str();
    sub->add_option("--targets", targets, "omega targets, one per form, '|'-separated");
    sub->add_option("--t", t, "t_j values, '|'-separated (default 0)");
    sub->add_option("--tp", tp, "t'_j values, '|'-separated (default 0)");
    sub->add_option("--B", B, "largest prime degree in the Euler product")->capture_default_str();
    sub->add_option("--y", y, "auto-correlation shifts, '|'-separated");
    sub->add_option("--calibrate", calibrate, "calibration family size")->capture_default_str();
    sub->add_option("--fresh", fresh, "fresh shift tuples checked after calibration")->capture_default_str();
    sub->add_option("--s", s, "tuple size for random shifts")->capture_default_str();
    sub->add_option("--csv", csv, "CSV export of the cross-correlation report");
  }

  LinearSystem system(const Field& F) const {
    LinearSystem sys;
    const auto rows = split(forms, '|');
    for (const auto& row : rows) {
      std::vector<Poly> coeffs;
      for (const auto& c : split(row, ';')) coeffs.push_back(parse_poly(F, c));
      sys.forms.push_back(std::move(coeffs));
    }
    sys.m = sys.forms.empty() ? 0 : static_cast<int>(sys.forms.front().size());
    sys.shifts = poly_list(F, shifts);
    return sys;
  }

  Job prepare(Context& ctx) {
    const Field F = field_for(ctx.common.q);
    if (window < 0) window = sieve.r;
    auto P = std::make_shared<SieveParams>(sieve.make(F));
    ctx.header["params"]["sieve"] = sieve_echo(*P);
    if (mode == "auto") return prepare_auto(ctx, F, P);
    const LinearSystem sys = system(F);
    sys.validate(F, sieve.k);
    if (mode == "cross") {
      int top = window - 1;
      for (int j = 0; j < sys.s(); ++j) {
        top = std::max(top, sys.shifts[static_cast<std::size_t>(j)].degree());
        for (const auto& c : sys.forms[static_cast<std::size_t>(j)]) top = std::max(top, c.degree() + window - 1);
      }
      const int cover = top + 1;
      return [this, &ctx, F, P, sys, cover] {
        const MeasureTable nu = unit ? MeasureTable::unit(F, cover) : tabulate_nu(*P, cover);
        std::optional<SamplingPlan> plan;
        if (sample) plan = SamplingPlan{samples, ctx.common.seed};
        CorrelationReport rep = cross_correlation(sys, nu, window, budget, plan, ctx.common.threads);
        Json r(rep.to_json());
        r.erase("params");
        r["measure"] = unit ? "unit" : "nu_r";
        ctx.emit(Json{{"cross_correlation", r}});
        if (!csv.empty()) {
          CsvWriter w(ctx.header["params"], {"r", "window", "estimate", "stderr", "terms", "seed"});
          w.row({std::to_string(P->r), std::to_string(window), fmt17(rep.estimate), fmt17(rep.stderr_),
                 std::to_string(rep.terms), std::to_string(rep.seed)});
          write_text(csv, w.str(), *ctx.out);
        }
      };
    }
    if (mode == "omega") {
      const auto tg = poly_list(F, targets);
      if (static_cast<int>(tg.size()) != sys.s()) throw Error(Errc::ConfigError, "--targets needs one entry per form");
      return [&ctx, F, P, sys, tg] {
        const Rational w = omega_local(sys, tg, *P);
        ctx.emit(Json{{"omega", std::to_string(w.numerator()) + "/" + std::to_string(w.denominator())},
                      {"crt_check", omega_crt_check(sys, tg, *P)}});
      };
    }
    auto tv = double_list(t), tpv = double_list(tp);
    if (tv.empty()) tv.assign(static_cast<std::size_t>(sys.s()), 0.0);
    if (tpv.empty()) tpv.assign(static_cast<std::size_t>(sys.s()), 0.0);
    if (static_cast<int>(tv.size()) != sys.s() || static_cast<int>(tpv.size()) != sys.s())
      throw Error(Errc::ConfigError, "--t and --tp need one entry per form");
    if (B < 0) throw Error(Errc::ConfigError, "B must be >= 0");
    return [this, &ctx, P, sys, tv, tpv] {
      const Complex Fv = euler_F(tv, tpv, sys, *P, B);
      const Complex target = euler_F_target(tv, tpv, *P);
      const Complex ratio = Fv / target;
      ctx.emit(Json{{"B", B},
                    {"F", {Fv.real(), Fv.imag()}},
                    {"target", {target.real(), target.imag()}},
                    {"ratio", {ratio.real(), ratio.imag()}}});
    };
  }

  Job prepare_auto(Context& ctx, const Field& F, std::shared_ptr<SieveParams> P) {
    std::vector<Poly> fixed = poly_list(F, y);
    int cover = window;
    for (const auto& v : fixed) cover = std::max(cover, v.degree() + 1);
    if (s < 1) throw Error(Errc::ConfigError, "s must be >= 1");
    if (calibrate < 1) throw Error(Errc::ConfigError, "calibrate must be >= 1");
    return [this, &ctx, F, P, fixed, cover] {
      const MeasureTable nu = unit ? MeasureTable::unit(F, cover) : tabulate_nu(*P, cover);
      const std::uint64_t box = ipow(static_cast<std::uint64_t>(F.q()), window);
      std::mt19937_64 rng(ctx.common.seed);
      std::uniform_int_distribution<std::uint64_t> pick(0, box - 1);
      auto tuple = [&] {
        std::vector<Poly> out;
        while (static_cast<int>(out.size()) < s) {
          Poly v = from_index(F, pick(rng));
          if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
        }
        return out;
      };
      std::vector<std::vector<Poly>> family, trial;
      for (int i = 0; i < calibrate; ++i) family.push_back(tuple());
      for (int i = 0; i < fresh; ++i) trial.push_back(tuple());
      const AutoCalibration cal = calibrate_auto(family, nu, window, *P);
      auto sweep = [&](const std::vector<std::vector<Poly>>& set, Json& rows) {
        int pass = 0;
        for (const auto& ys : set) {
          const AutoReport rep = auto_correlation(ys, nu, window, *P, cal);
          pass += rep.holds();
          Json yj = Json::array();
          for (const auto& v : ys) yj.push_back(format_poly(F, v));
          rows.push_back(Json{{"y", yj}, {"lhs", rep.lhs}, {"bound", rep.bound}, {"holds", rep.holds()}});
        }
        return set.empty() ? 1.0 : static_cast<double>(pass) / static_cast<double>(set.size());
      };
      Json cal_rows = Json::array(), fresh_rows = Json::array(), fixed_rows = Json::array();
      const double cal_rate = sweep(family, cal_rows);
      const double fresh_rate = sweep(trial, fresh_rows);
      if (!fixed.empty()) sweep({fixed}, fixed_rows);
      const Json calj(cal.to_json());
      ctx.emit(Json{{"calibration", calj},
                    {"calibration_pass_rate", cal_rate},
                    {"fresh_pass_rate", fresh_rate},
                    {"requested", fixed_rows},
                    {"calibration_family", cal_rows},
                    {"fresh", fresh_rows}});
    };
  }
};

struct LiftCmd {
  SieveOpts sieve;
  std::string N;
  bool unit = false;
  std::size_t j = 0;
  std::string omega = "1";
  std::string x0;
  std::string condition = "one";
  std::string table;
  std::uint64_t budget = std::uint64_t{1} << 24;

  void attach(CLI::App* sub) {
    add_sieve(sub, sieve, false);
    sub->add_option("--N", N, "modulus N")->required();
    sub->add_flag("--unit", unit, "lift the unit measure instead of nu");
    sub->add_option("--j", j, "vertex index")->capture_default_str();
    sub->add_option("--omega", omega, "Omega as '|'-separated bitmasks over e_j")->capture_default_str();
    sub->add_option("--x0", x0, "fixed assignment, one residue per vertex, '|'-separated (default 0)");
    sub->add_option("--condition", condition, "one | two | none")
        ->capture_default_str()
        ->check(CLI::IsMember({"one", "two", "none"}));
    sub->add_option("--table", table, "CSV file for the lifted table");
    sub->add_option("--budget", budget, "largest exhaustive sum")->capture_default_str();
  }

  Job prepare(Context& ctx) {
    const Field F = field_for(ctx.common.q);
    const QuotientRing ring = QuotientRing::make(F, parse_poly(F, N), sieve.k);
    if (sieve.r == 0) sieve.r = ring.degree();
    if (!sieve.R) sieve.R = static_cast<double>(sieve.r);
    std::shared_ptr<SieveParams> P;
    if (!unit) {
      P = std::make_shared<SieveParams>(sieve.make(F));
      ctx.header["params"]["sieve"] = sieve_echo(*P);
    }
    const HyperGraph G(F, sieve.k);
    if (j >= G.size()) throw Error(Errc::ConfigError, "vertex index out of range");
    std::vector<std::uint64_t> masks;
    for (const auto& m : split(omega, '|')) {
      try {
        masks.push_back(std::stoull(m));
      } catch (const std::exception&) {
        throw Error(Errc::ConfigError, "bad omega mask '" + m + "'");
      }
      if (masks.back() >> (G.size() - 1)) throw Error(Errc::ConfigError, "omega mask wider than e_j");
    }
    std::vector<Poly> x(G.size());
    const auto given = poly_list(F, x0);
    if (!given.empty()) {
      if (given.size() != G.size()) throw Error(Errc::ConfigError, "--x0 needs one residue per vertex");
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = ring.reduce(given[i]);
    }
    return [this, &ctx, F, ring, P, G, masks, x] {
      const MeasureTable nu = unit ? MeasureTable::unit(F, ring.degree()) : tabulate_nu(*P, ring.degree());
      const MeasureTable lifted = lift_measure(nu, ring);
      Json body;
      body["modulus"] = format_poly(F, ring.modulus());
      body["ring_size"] = ring.size();
      body["lifted_mean"] = lifted.mean(ctx.common.threads);
      if (condition == "one") {
        body["condition_one"] = condition_one_estimate(ring, lifted, G, j, masks, x, budget, ctx.common.threads);
      } else if (condition == "two") {
        std::vector<std::vector<std::uint64_t>> all(G.size(), masks);
        body["condition_two"] = condition_two_estimate(ring, lifted, G, all, budget, ctx.common.threads);
        body["condition_two_normalization"] = "number of (x0, x1) tuples";
      }
      ctx.emit(body);
      if (!table.empty()) {
        CsvWriter w(ctx.header["params"], {"residue", "value"});
        for (std::uint64_t i = 0; i < lifted.size(); ++i) w.row({format_poly(F, from_index(F, i)), fmt17(lifted[i])});
        write_text(table, w.str(), *ctx.out);
      }
    };
  }
};

Json search_body(const Field& F, const SearchReport& rep) {
  Json certs = Json::array();
  for (const auto& c : rep.certificates) {
    certs.push_back(Json(c.to_json(F)));
  }
  const Json summary(rep.summary());
  return Json{{"summary", summary}, {"certificates", certs}};
}

struct SearchCmd {
  int s = 1;
  int deg_a_max = 0;
  int deg_m_max = -1;
  std::uint64_t budget = std::uint64_t{1} << 32;
  bool no_guard = false;
  std::string W;
  std::string alpha = "1";

  void attach(CLI::App* sub) {
    sub->add_option("--s", s, "class window")->capture_default_str();
    sub->add_option("--deg-a-max", deg_a_max, "largest deg a")->required();
    sub->add_option("--deg-m-max", deg_m_max, "largest deg m (default deg_a_max - s)");
    sub->add_option("--budget", budget, "classes examined at most")->capture_default_str();
    sub->add_flag("--no-guard", no_guard, "drop the deg a >= deg m + s guard");
    sub->add_option("--W", W, "twist: test W f + alpha");
    sub->add_option("--alpha", alpha, "twist residue")->capture_default_str();
  }

  Job prepare(Context& ctx) {
    const Field F = field_for(ctx.common.q);
    SearchOptions opt;
    opt.s = s;
    opt.deg_a_max = deg_a_max;
    opt.deg_m_max = deg_m_max;
    opt.budget = budget;
    opt.degree_guard = !no_guard;
    opt.threads = ctx.common.threads;
    if (!W.empty()) {
      opt.twist = Twist{parse_poly(F, W), parse_poly(F, alpha)};
      if (opt.twist->W.is_zero() || gcd(F, opt.twist->alpha, opt.twist->W).degree() != 0)
        throw Error(Errc::AlphaNotCoprime, "alpha must be coprime to W");
    }
    if (s < 1) throw Error(Errc::ConfigError, "s must be >= 1");
    return [&ctx, F, opt] {
      const SearchReport rep = search(F, opt);
      Json body = search_body(F, rep);
      body["class_size"] = ipow(static_cast<std::uint64_t>(F.q()), opt.s);
      ctx.emit(body);
      if (rep.budget_exceeded) throw Error(Errc::BudgetExceeded, "search stopped at the budget; partial results written");
    };
  }
};

struct InClassCmd {
  std::string M = "1";
  std::string residue = "0";
  std::string W;
  std::optional<int> w;
  std::string alpha;
  int r = 0;
  int s = 1;
  int deg_m_max = -1;
  std::uint64_t budget = std::uint64_t{1} << 32;

  void attach(CLI::App* sub) {
    sub->add_option("--M", M, "equivalence modulus")->capture_default_str();
    sub->add_option("--residue", residue, "class residue mod M")->capture_default_str();
    sub->add_option("--W", W, "W polynomial (default 1)");
    sub->add_option("--w", w, "build W from the irreducibles of degree <= w");
    sub->add_option("--alpha", alpha, "residue alpha coprime to W (default 1, or 0 when W = 1)");
    sub->add_option("--r", r, "elements have degree < r")->required();
    sub->add_option("--s", s, "class window")->capture_default_str();
    sub->add_option("--deg-m-max", deg_m_max, "largest deg m (default r - 1 - s)");
    sub->add_option("--budget", budget, "classes examined at most")->capture_default_str();
  }

  Job prepare(Context& ctx) {
    const Field F = field_for(ctx.common.q);
    if (!W.empty() && w) throw Error(Errc::ConfigError, "give --W or --w, not both");
    InClassOptions opt;
    opt.M = parse_poly(F, M);
    opt.residue = parse_poly(F, residue);
    opt.W = w ? make_W(F, *w) : (W.empty() ? Poly::one() : parse_poly(F, W));
    opt.alpha = alpha.empty() ? (opt.W == Poly::one() ? Poly() : Poly::one()) : parse_poly(F, alpha);
    opt.r = r;
    opt.s = s;
    opt.deg_m_max = deg_m_max;
    opt.budget = budget;
    opt.threads = ctx.common.threads;
    if (opt.M.is_zero()) throw Error(Errc::ZeroModulus, "M is zero");
    if (opt.W.is_zero() || gcd(F, opt.alpha, opt.W).degree() != 0)
      throw Error(Errc::AlphaNotCoprime, "alpha must be coprime to W");
    if (s < 1) throw Error(Errc::ConfigError, "s must be >= 1");
    return [&ctx, F, opt] {
      const SearchReport rep = search_in_class(F, opt);
      Json body = search_body(F, rep);
      body["class_size"] = ipow(static_cast<std::uint64_t>(F.q()), opt.s);
      ctx.emit(body);
      if (rep.budget_exceeded) throw Error(Errc::BudgetExceeded, "search stopped at the budget; partial results written");
    };
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  // Config files are expanded into ordinary flags placed before the command
  // line ones; the last occurrence of an option wins, so flags override.
  std::vector<std::string> expanded;
  try {
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config") {
        if (i + 1 >= args.size()) throw Error(Errc::ConfigError, "--config needs a file");
        Settings s = load_config(args[++i]);
        if (auto it = s.find("subcommand"); it != s.end()) {
          if (args.empty() || it->second != args.front())
            throw Error(Errc::ConfigError, "config was written for subcommand '" + it->second + "'");
          s.erase(it);
        }
        for (auto& a : to_args(s, kFlags)) expanded.push_back(std::move(a));
      } else {
        rest.push_back(args[i]);
      }
    }
    if (!rest.empty()) expanded.insert(expanded.begin(), rest.front());
    expanded.insert(expanded.end(), rest.empty() ? rest.end() : rest.begin() + 1, rest.end());
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Workbench for F_q[t]: sieve weights, correlations and prime patterns", "ffpat"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Context ctx;
  ctx.out = &out;

  IrreduciblesCmd irr;
  LambdaCmd lam;
  CphiCmd cph;
  MeasureCmd mea;
  CorrelateCmd cor;
  LiftCmd lif;
  SearchCmd sea;
  InClassCmd inc;
  std::vector<std::pair<CLI::App*, std::function<Job(Context&)>>> subs;
  auto reg = [&](const char* name, const char* help, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, ctx.common);
    cmd.attach(sub);
    subs.emplace_back(sub, [&cmd](Context& c) { return cmd.prepare(c); });
  };
  reg("irreducibles", "build or verify the irreducible polynomial cache", irr);
  reg("lambda", "evaluate the truncated von Mangoldt weight", lam);
  reg("cphi", "phi_hat samples and the constant c_phi", cph);
  reg("measure", "tabulate nu_r over a degree window", mea);
  reg("correlate", "cross/auto correlation, local densities, Euler products", cor);
  reg("lift", "lift nu to F_q[t]/N and estimate hypergraph conditions", lif);
  reg("search", "search for truncated classes of primes", sea);
  reg("search-in-class", "search inside a congruence class under the W-trick", inc);

  try {
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Job job;
  try {
    for (auto& [sub, prepare] : subs) {
      if (!sub->parsed()) continue;
      ctx.sub = sub;
      const Json cfg = effective_config(sub);
      if (ctx.common.dump_config) {
        Settings s;
        for (auto& [k, v] : cfg.items()) s[k] = v.get<std::string>();
        out << dump_config(s);
        return 0;
      }
      ctx.header["params"]["subcommand"] = sub->get_name();
      ctx.header["params"]["config"] = cfg;
      ctx.header["params"]["q"] = ctx.common.q;
      job = prepare(ctx);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  try {
    job();
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ffpat::cli
