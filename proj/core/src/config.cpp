#include "locclab/config.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "locclab/errors.hpp"

namespace locclab {
namespace {

std::atomic<std::size_t> g_size_cap{kMaxSizeCap};

unsigned threads_from_env() {
  if (const char* env = std::getenv("LOCCLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::atomic<unsigned>& thread_slot() {
  static std::atomic<unsigned> threads{threads_from_env()};
  return threads;
}

}  // namespace

std::size_t size_cap() { return g_size_cap.load(); }

void set_size_cap(std::size_t cap) {
  if (cap < 2 || cap > kMaxSizeCap) {
    throw InvalidArgument("size cap must lie in [2, 2^22], got " + std::to_string(cap));
  }
  g_size_cap.store(cap);
}

std::size_t checked_dimension(int parties, int dim) {
  if (parties < 1) throw InvalidArgument("party count must be >= 1");
  if (dim < 2) throw InvalidArgument("local dimension must be >= 2");
  const std::size_t cap = size_cap();
  std::size_t total = 1;
  for (int p = 0; p < parties; ++p) {
    if (total > cap / static_cast<std::size_t>(dim)) {
      throw SizeCapExceeded("d^n exceeds the size cap " + std::to_string(cap) + " (n=" +
                            std::to_string(parties) + ", d=" + std::to_string(dim) + ")");
    }
    total *= static_cast<std::size_t>(dim);
  }
  return total;
}

unsigned thread_count() { return thread_slot().load(); }

void set_thread_count(unsigned threads) {
  if (threads == 0) throw InvalidArgument("thread count must be >= 1");
  thread_slot().store(threads);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace locclab
