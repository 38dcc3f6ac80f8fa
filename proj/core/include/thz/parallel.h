// Copyright 2026 The THz Planner Authors
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

#ifndef THZ_PARALLEL_H_
#define THZ_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace thz {

// Thread cap from THZ_PLANNER_THREADS (0 or unset = hardware concurrency).
unsigned default_thread_count();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
// Each index runs exactly once; the exception from the lowest failing
// index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace thz

#endif  // THZ_PARALLEL_H_
