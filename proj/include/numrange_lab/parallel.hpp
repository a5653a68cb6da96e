#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace numrange_lab {

// Worker count: hardware concurrency, capped by NUMRANGE_LAB_THREADS.
inline unsigned thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("NUMRANGE_LAB_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1 && static_cast<unsigned>(cap) < hw)
      hw = static_cast<unsigned>(cap);
  }
  return hw;
}

// Runs body(begin, end) over fixed-size chunks of [0, count). Chunk
// boundaries depend only on count and chunk_size, never on the worker
// count, so results written per-index are identical for any thread count.
template <typename Body>
void for_chunks(std::size_t count, std::size_t chunk_size, Body&& body) {
  if (count == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  std::size_t n_chunks = (count + chunk_size - 1) / chunk_size;
  unsigned workers = std::min<std::size_t>(thread_count(), n_chunks);

  auto run_chunk = [&](std::size_t c) {
    std::size_t begin = c * chunk_size;
    std::size_t end = std::min(count, begin + chunk_size);
    body(begin, end);
  };

  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failed) std::rethrow_exception(first_error);
}

}  // namespace numrange_lab
