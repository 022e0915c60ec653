// Copyright 2026 The dpgoldstein Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dpg {
namespace {

constexpr std::size_t kChunks = 64;
constexpr std::size_t kSerialCutoff = 4096;

}  // namespace

int max_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("DP_GOLDSTEIN_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && cap < hw) hw = static_cast<int>(cap);
  }
  return hw;
}

std::size_t chunk_count(std::size_t n) {
  if (n == 0) return 0;
  if (n <= kSerialCutoff) return 1;
  return std::min(kChunks, n);
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& body) {
  const std::size_t chunks = chunk_count(n);
  if (chunks == 0) return;
  const std::size_t step = (n + chunks - 1) / chunks;
  if (chunks == 1 || max_threads() == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t b = c * step;
      body(c, b, std::min(n, b + step));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::size_t b = c * step;
      body(c, b, std::min(n, b + step));
    }
  };
  const int nthreads =
      std::min<int>(max_threads(), static_cast<int>(chunks));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads) - 1);
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace dpg
