#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffpat/field.hpp"
#include "ffpat/poly.hpp"

namespace ffpat {

/// Pairwise (tree) summation of v[0..n).
double pairwise_sum(const double* v, std::size_t n);

/// Entries per reduction block. The block layout depends only on n, never on
/// the thread count, so results are bit-identical for any `threads`.
inline constexpr std::size_t kReduceBlock = std::size_t{1} << 14;

/// Sums term(i) for i in [0, n): each block is summed pairwise, the block
/// partials are then summed pairwise. Blocks are handed to `threads` workers.
double deterministic_sum(std::uint64_t n, const std::function<double(std::uint64_t)>& term, int threads = 1);

/// Runs body(block_index, begin, end) over fixed blocks of [0, n) on up to
/// `threads` workers.
void parallel_blocks(std::uint64_t n, std::uint64_t block, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& body);

/// A measure evaluated on every polynomial of degree < window, indexed by
/// base-q index. A unit table holds no values and returns 1 everywhere.
class MeasureTable {
 public:
  static MeasureTable unit(const Field& F, int window);
  MeasureTable(const Field& F, int window, std::vector<double> values, nlohmann::json meta = {});

  const Field& field() const noexcept { return F_; }
  int window() const noexcept { return window_; }
  bool is_unit() const noexcept { return unit_; }
  std::uint64_t size() const noexcept { return size_; }
  double operator[](std::uint64_t index) const { return unit_ ? 1.0 : values_[index]; }
  double at(const Poly& x) const;
  const nlohmann::json& meta() const noexcept { return meta_; }
  double mean(int threads = 1) const;
  double max() const;

 private:
  MeasureTable(const Field& F, int window);
  Field F_;
  int window_;
  bool unit_ = false;
  std::uint64_t size_ = 0;
  std::vector<double> values_;
  nlohmann::json meta_;
};

}  // namespace ffpat
