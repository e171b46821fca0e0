#include "hexgauge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hexgauge {

unsigned thread_count() {
  if (const char* env = std::getenv("HEXGAUGE_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t n, unsigned chunks,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
  chunks = static_cast<unsigned>(std::clamp<std::size_t>(chunks, 1, std::max<std::size_t>(n, 1)));
  const std::size_t step = (n + chunks - 1) / chunks;
  if (chunks == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks);
    for (unsigned c = 0; c < chunks; ++c) {
      const std::size_t begin = std::min(n, c * step);
      const std::size_t end = std::min(n, begin + step);
      workers.emplace_back([&, c, begin, end] {
        try {
          body(c, begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hexgauge
