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

#ifndef DPGOLDSTEIN_CORE_PARALLEL_HPP_
#define DPGOLDSTEIN_CORE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace dpg {

// Thread cap: min(DP_GOLDSTEIN_THREADS, hardware concurrency), at least 1.
int max_threads();

// Runs body(chunk_index, begin, end) over a fixed partition of [0, n) into
// chunks. The partition depends only on n, never on the thread count, and
// chunk results must be written to per-chunk slots, so callers that reduce
// in chunk order are bit-reproducible for any thread count.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t chunk,
                                              std::size_t begin,
                                              std::size_t end)>& body);

// Number of chunks parallel_chunks will use for a range of length n.
std::size_t chunk_count(std::size_t n);

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_PARALLEL_HPP_
