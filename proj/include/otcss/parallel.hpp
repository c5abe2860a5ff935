#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace otcss {

/// Calls body(i) for i in [0, n) on up to hardware_concurrency threads, each
/// owning a contiguous block. body must only write to slots owned by i, so the
/// result does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_block = 1) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_block)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t block = (n + workers - 1) / workers;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(n, begin + block);
    if (begin >= end) break;
    threads.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace otcss
