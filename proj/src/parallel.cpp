#include "tcsim/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tcsim {

int worker_count_from_env() {
  const char* raw = std::getenv("TCSIM_WORKERS");
  if (raw == nullptr || *raw == '\0') {
    return 1;
  }
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || value < 1) {
    return 1;
  }
  return static_cast<int>(std::min(value, 256l));
}

void parallel_for(std::uint64_t count, int workers,
                  const std::function<void(std::uint64_t)>& fn) {
  if (workers <= 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  const std::uint64_t w =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), count);
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::uint64_t t = 0; t < w; ++t) {
    pool.emplace_back([t, w, count, &fn, &error_mutex, &first_error] {
      try {
        for (std::uint64_t i = t; i < count; i += w) {
          fn(i);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace tcsim
