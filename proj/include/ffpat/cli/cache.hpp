#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffpat/field.hpp"
#include "ffpat/poly.hpp"

namespace ffpat::cli {

inline constexpr int kCacheVersion = 1;

/// Monic irreducibles per degree in ascending index order.
struct IrreducibleCache {
  int p = 0;
  int e = 1;
  int max_degree = 0;
  std::vector<std::vector<Poly>> blocks;  ///< blocks[d - 1] holds degree d
};

IrreducibleCache build_cache(const Field& F, int max_degree);
std::string serialize_cache(const Field& F, const IrreducibleCache& c);
/// Throws VersionMismatch, FieldMismatch (header disagrees with F) or
/// CorruptCache (malformed text, wrong block sizes, unsorted entries).
IrreducibleCache parse_cache(const Field& F, const std::string& text);

struct CacheVerification {
  bool ok = true;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> expected;
  int spot_checks = 0;
  int spot_failures = 0;
  nlohmann::ordered_json to_json() const;
};

/// Counts against the necklace formula, then factors `spot` entries drawn
/// with a fixed seed.
CacheVerification verify_cache(const Field& F, const IrreducibleCache& c, int spot = 100, std::uint64_t seed = 1);

/// $FFPAT_CACHE_DIR (or ".") joined with a name derived from q and degree.
std::string default_cache_path(const Field& F, int max_degree);

}  // namespace ffpat::cli
