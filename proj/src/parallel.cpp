#include "quenchbat/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "quenchbat/errors.hpp"

namespace quenchbat {

int resolve_workers(int hint) {
  if (hint > 0) return hint;
  if (hint < 0) throw SpecError("worker count must be >= 0");
  if (const char* env = std::getenv("QUENCHBAT_WORKERS")) {
    try {
      std::size_t pos = 0;
      int n = std::stoi(env, &pos);
      if (pos == std::string(env).size() && n > 0) return n;
    } catch (const std::exception&) {
      // Fall through to hardware concurrency on unparsable values.
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_chunks(std::size_t n, int workers,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t w = static_cast<std::size_t>(workers < 1 ? 1 : workers);
  if (w > n) w = n;
  if (w == 1) {
    fn(0, n);
    return;
  }

  // Chunk layout depends only on (n, w): the first `rem` chunks get one
  // extra element.
  std::size_t base = n / w;
  std::size_t rem = n % w;
  std::vector<std::thread> threads;
  threads.reserve(w);
  std::vector<std::exception_ptr> errors(w);
  std::size_t begin = 0;
  for (std::size_t i = 0; i < w; ++i) {
    std::size_t len = base + (i < rem ? 1 : 0);
    std::size_t end = begin + len;
    threads.emplace_back([&fn, &errors, i, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace quenchbat
