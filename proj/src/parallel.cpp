#include "eggd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eggd {

int thread_count() {
  if (const char* env = std::getenv("EGGD_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) {
      return static_cast<int>(std::min(parsed, 1024L));
    }
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

void parallel_for_chunks(Index count, Index chunk,
                         const std::function<void(Index, Index)>& fn) {
  if (count <= 0) return;
  chunk = std::max<Index>(chunk, 1);
  const Index chunks = (count + chunk - 1) / chunk;
  const int workers = static_cast<int>(std::min<Index>(thread_count(), chunks));
  if (workers <= 1) {
    for (Index begin = 0; begin < count; begin += chunk) {
      fn(begin, std::min(count, begin + chunk));
    }
    return;
  }

  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const Index c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const Index begin = c * chunk;
        fn(begin, std::min(count, begin + chunk));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace eggd
