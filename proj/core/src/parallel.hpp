#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace kronspin::detail {

/// Below this many work items everything runs on the calling thread.
inline constexpr std::size_t kParallelGrain = std::size_t{1} << 14;

/// Calls fn(begin, end) over contiguous chunks of [0, count), one chunk per
/// worker. Chunk boundaries depend only on count and workers.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count < kParallelGrain) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, count / (kParallelGrain / 4) + 1);
  const std::size_t step = (count + chunks - 1) / chunks;
  std::vector<std::jthread> threads;
  threads.reserve(chunks - 1);
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t begin = std::min(count, c * step);
    const std::size_t end = std::min(count, begin + step);
    if (begin < end) threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  fn(std::size_t{0}, std::min(count, step));
}

}  // namespace kronspin::detail
