#include "ffpat/cli/cache.hpp"

#include <cstdlib>
#include <random>
#include <sstream>

#include "ffpat/error.hpp"
#include "ffpat/irreducible.hpp"

namespace ffpat::cli {

IrreducibleCache build_cache(const Field& F, int max_degree) {
  IrreducibleCache c{F.p(), F.e(), max_degree, {}};
  IrreducibleSieve sieve(F, max_degree);
  for (int d = 1; d <= max_degree; ++d) c.blocks.push_back(sieve.list(d));
  return c;
}

std::string serialize_cache(const Field& F, const IrreducibleCache& c) {
  std::string out = "# ffpat irreducible cache\n";
  out += "version = " + std::to_string(kCacheVersion) + "\n";
  out += "p = " + std::to_string(c.p) + "\n";
  out += "e = " + std::to_string(c.e) + "\n";
  out += "max_degree = " + std::to_string(c.max_degree) + "\n";
  for (int d = 1; d <= c.max_degree; ++d) {
    const auto& block = c.blocks[static_cast<std::size_t>(d - 1)];
    out += "degree " + std::to_string(d) + " " + std::to_string(block.size()) + "\n";
    for (const auto& p : block) out += format_poly(F, p) + "\n";
  }
  out += "end\n";
  return out;
}

namespace {

int header_int(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::CorruptCache, "cache header ends early");
  const std::string prefix = key + " = ";
  if (line.rfind(prefix, 0) != 0) throw Error(Errc::CorruptCache, "cache header: expected '" + key + "'");
  try {
    return std::stoi(line.substr(prefix.size()));
  } catch (const std::exception&) {
    throw Error(Errc::CorruptCache, "cache header: bad value for '" + key + "'");
  }
}

}  // namespace

IrreducibleCache parse_cache(const Field& F, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "# ffpat irreducible cache") throw Error(Errc::CorruptCache, "not an irreducible cache");
  const int version = header_int(in, "version");
  if (version != kCacheVersion) throw Error(Errc::VersionMismatch, "cache version " + std::to_string(version));
  IrreducibleCache c;
  c.p = header_int(in, "p");
  c.e = header_int(in, "e");
  c.max_degree = header_int(in, "max_degree");
  if (c.p != F.p() || c.e != F.e())
    throw Error(Errc::FieldMismatch, "cache is for q = " + std::to_string(c.p) + "^" + std::to_string(c.e));
  for (int d = 1; d <= c.max_degree; ++d) {
    if (!std::getline(in, line)) throw Error(Errc::CorruptCache, "cache ends before degree " + std::to_string(d));
    std::istringstream hdr(line);
    std::string word;
    int deg = 0;
    std::uint64_t n = 0;
    if (!(hdr >> word >> deg >> n) || word != "degree" || deg != d)
      throw Error(Errc::CorruptCache, "bad block header for degree " + std::to_string(d));
    if (n != count_irreducible(F.q(), d)) throw Error(Errc::CorruptCache, "block size mismatch at degree " + std::to_string(d));
    std::vector<Poly> block;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!std::getline(in, line)) throw Error(Errc::CorruptCache, "cache truncated in degree " + std::to_string(d));
      Poly p;
      try {
        p = parse_poly(F, line);
      } catch (const Error&) {
        throw Error(Errc::CorruptCache, "unparsable entry in degree " + std::to_string(d));
      }
      if (p.degree() != d || !p.is_monic()) throw Error(Errc::CorruptCache, "entry of wrong degree in block " + std::to_string(d));
      if (!block.empty() && !(block.back() < p)) throw Error(Errc::CorruptCache, "entries out of order in degree " + std::to_string(d));
      block.push_back(std::move(p));
    }
    c.blocks.push_back(std::move(block));
  }
  if (!std::getline(in, line) || line != "end") throw Error(Errc::CorruptCache, "cache lacks its end marker");
  return c;
}

nlohmann::ordered_json CacheVerification::to_json() const {
  nlohmann::ordered_json j;
  j["ok"] = ok;
  j["counts"] = counts;
  j["expected"] = expected;
  j["spot_checks"] = spot_checks;
  j["spot_failures"] = spot_failures;
  return j;
}

CacheVerification verify_cache(const Field& F, const IrreducibleCache& c, int spot, std::uint64_t seed) {
  CacheVerification v;
  std::vector<const Poly*> all;
  for (int d = 1; d <= c.max_degree; ++d) {
    const auto& block = c.blocks[static_cast<std::size_t>(d - 1)];
    v.counts.push_back(block.size());
    v.expected.push_back(count_irreducible(F.q(), d));
    v.ok = v.ok && v.counts.back() == v.expected.back();
    for (const auto& p : block) all.push_back(&p);
  }
  if (!all.empty()) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int i = 0; i < spot; ++i) {
      ++v.spot_checks;
      if (!factor(F, *all[pick(rng)]).is_single_prime()) ++v.spot_failures;
    }
  }
  v.ok = v.ok && v.spot_failures == 0;
  return v;
}

std::string default_cache_path(const Field& F, int max_degree) {
  const char* dir = std::getenv("FFPAT_CACHE_DIR");
  std::string base = dir && *dir ? dir : ".";
  if (base.back() != '/') base += '/';
  return base + "irreducibles_q" + std::to_string(F.q()) + "_d" + std::to_string(max_degree) + ".txt";
}

}  // namespace ffpat::cli
