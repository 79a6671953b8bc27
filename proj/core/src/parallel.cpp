#include "corb/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace corb {

static std::atomic<unsigned> g_threads{0};

void set_max_threads(unsigned k) { g_threads = k; }

unsigned max_threads() {
  unsigned k = g_threads;
  if (k == 0)
    k = std::max(1u, std::thread::hardware_concurrency());
  return k;
}

void parallel_for(size_t n, const std::function<void(size_t)> &body) {
  unsigned k = static_cast<unsigned>(std::min<size_t>(max_threads(), n));
  if (k <= 1) {
    for (size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      size_t i = next++;
      if (i >= n)
        return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err)
          err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < k; ++t)
    pool.emplace_back(worker);
  for (auto &th : pool)
    th.join();
  if (err)
    std::rethrow_exception(err);
}

} // namespace corb
