#include "ffpat/measure.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "ffpat/error.hpp"

namespace ffpat {

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

void parallel_blocks(std::uint64_t n, std::uint64_t block, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& body) {
  const std::uint64_t blocks = (n + block - 1) / block;
  const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
  if (workers == 1 || blocks <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) body(b, b * block, std::min(n, (b + 1) * block));
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (std::uint64_t w = 0; w < std::min(workers, blocks); ++w) {
    pool.emplace_back([&] {
      try {
        for (std::uint64_t b = next++; b < blocks; b = next++) body(b, b * block, std::min(n, (b + 1) * block));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double deterministic_sum(std::uint64_t n, const std::function<double(std::uint64_t)>& term, int threads) {
  if (n == 0) return 0.0;
  const std::uint64_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
  parallel_blocks(n, kReduceBlock, threads, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    std::vector<double> buf(static_cast<std::size_t>(end - begin));
    for (std::uint64_t i = begin; i < end; ++i) buf[static_cast<std::size_t>(i - begin)] = term(i);
    partial[static_cast<std::size_t>(b)] = pairwise_sum(buf.data(), buf.size());
  });
  return pairwise_sum(partial.data(), partial.size());
}

MeasureTable::MeasureTable(const Field& F, int window) : F_(F), window_(window) {
  if (window < 0) throw Error(Errc::InvalidInput, "window must be >= 0");
  size_ = ipow(static_cast<std::uint64_t>(F.q()), window);
}

MeasureTable MeasureTable::unit(const Field& F, int window) {
  MeasureTable t(F, window);
  t.unit_ = true;
  t.meta_ = {{"measure", "unit"}};
  return t;
}

MeasureTable::MeasureTable(const Field& F, int window, std::vector<double> values, nlohmann::json meta)
    : MeasureTable(F, window) {
  if (values.size() != size_) throw Error(Errc::InvalidInput, "measure table size does not match q^window");
  values_ = std::move(values);
  meta_ = std::move(meta);
}

double MeasureTable::at(const Poly& x) const {
  if (x.degree() >= window_) throw Error(Errc::InvalidInput, "polynomial outside the measure window");
  return (*this)[to_index(F_, x)];
}

double MeasureTable::mean(int threads) const {
  if (unit_) return 1.0;
  return deterministic_sum(size_, [this](std::uint64_t i) { return values_[i]; }, threads) / static_cast<double>(size_);
}

double MeasureTable::max() const {
  if (unit_) return 1.0;
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

}  // namespace ffpat
