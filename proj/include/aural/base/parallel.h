/*
Copyright 2026 The Auralize Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef AURAL_BASE_PARALLEL_H_
#define AURAL_BASE_PARALLEL_H_

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace aural {

// Thread count resolution: explicit request > AURAL_THREADS environment
// variable > hardware concurrency.
inline int ResolveThreadCount(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("AURAL_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..count-1) over |num_threads| workers. Each index is claimed
// exactly once; callers keep determinism by writing to per-index slots.
inline void ParallelFor(int num_threads, size_t count,
                        const std::function<void(size_t)>& fn) {
  if (count == 0) return;
  if (num_threads <= 1 || count == 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  const auto worker = [&next, count, &fn]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  const size_t n = std::min<size_t>(static_cast<size_t>(num_threads), count);
  threads.reserve(n - 1);
  for (size_t i = 1; i < n; ++i) threads.emplace_back(worker);
  worker();
  for (auto& thread : threads) thread.join();
}

}  // namespace aural

#endif  // AURAL_BASE_PARALLEL_H_
