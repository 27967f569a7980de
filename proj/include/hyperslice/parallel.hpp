#pragma once

// Chunked parallel summation with a fixed reduction order. Node ranges are cut
// into chunks whose boundaries do not depend on the worker count, each chunk is
// summed sequentially, and chunk totals are added in chunk order, so results
// are bitwise identical for any number of threads.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hyperslice {

inline constexpr std::size_t kReductionChunk = 4096;

/// Worker cap: HYPERSLICE_THREADS if set and positive, else the hardware count.
inline std::size_t worker_count() {
  std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HYPERSLICE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

/// Returns sum over i in [0, count) of body(i, acc) contributions, where body
/// adds node i's contribution into acc.
template <class T, class Body>
T deterministic_sum(std::size_t count, const T& zero, Body&& body, std::size_t workers = worker_count()) {
  const std::size_t chunks = (count + kReductionChunk - 1) / kReductionChunk;
  std::vector<T> partial(chunks, zero);
  auto run_chunk = [&](std::size_t c) {
    T acc = zero;
    const std::size_t end = std::min(count, (c + 1) * kReductionChunk);
    for (std::size_t i = c * kReductionChunk; i < end; ++i) body(i, acc);
    partial[c] = acc;
  };

  workers = std::min(workers, chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
          try {
            run_chunk(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  T total = zero;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace hyperslice
