#include "sphere_energy/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sphere_energy {
namespace {
std::atomic<int> g_workers{0};
}

void set_default_workers(int workers) { g_workers.store(workers); }

int default_workers() {
  int w = g_workers.load();
  if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
  return w > 0 ? w : 1;
}

void parallel_chunks(int n_chunks, int workers,
                     const std::function<void(int)>& fn) {
  if (n_chunks <= 0) return;
  if (workers <= 0) workers = default_workers();
  if (workers > n_chunks) workers = n_chunks;

  if (workers == 1) {
    for (int c = 0; c < n_chunks; ++c) fn(c);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      const int c = next.fetch_add(1);
      if (c >= n_chunks) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sphere_energy
