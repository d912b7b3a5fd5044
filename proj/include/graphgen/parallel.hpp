#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace graphgen {

// Runs fn(block_index, begin, end) over fixed-size blocks of [0, n).
// Block boundaries depend only on block_size, never on the thread count, so
// per-block results combined in block order reproduce bit-identically for
// any number of threads.
template <typename Fn>
void parallel_blocks(std::size_t n, std::size_t block_size, std::size_t threads, Fn&& fn) {
  if (n == 0) return;
  if (block_size == 0) block_size = 1;
  const std::size_t num_blocks = (n + block_size - 1) / block_size;
  auto run_block = [&](std::size_t b) {
    fn(b, b * block_size, std::min(n, (b + 1) * block_size));
  };
  if (threads <= 1 || num_blocks == 1) {
    for (std::size_t b = 0; b < num_blocks; ++b) run_block(b);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= num_blocks || failed.load(std::memory_order_relaxed)) return;
      try {
        run_block(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const std::size_t workers = std::min(threads, num_blocks);
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline std::size_t default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace graphgen
