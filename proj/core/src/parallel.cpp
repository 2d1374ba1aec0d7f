#include "whitham/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace whitham {

namespace {
std::atomic<int> g_threads{0};
thread_local bool g_in_worker = false;

int default_threads() {
  if (const char* env = std::getenv("WHITHAM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}
}  // namespace

int thread_count() {
  const int n = g_threads.load();
  return n > 0 ? n : default_threads();
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0); }

void parallel_for(int n, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  const int workers = std::min(thread_count(), n);
  // Nested calls run serially; one level of parallelism is enough and the
  // outer split already owns the cores.
  if (workers <= 1 || g_in_worker) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto run_block = [&](int lo, int hi) {
    g_in_worker = true;
    try {
      for (int i = lo; i < hi; ++i) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int base = n / workers, extra = n % workers;
  int lo = 0;
  for (int w = 0; w < workers; ++w) {
    const int hi = lo + base + (w < extra ? 1 : 0);
    pool.emplace_back(run_block, lo, hi);
    lo = hi;
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace whitham
