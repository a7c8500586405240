// Copyright 2026 The chordlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHORDLAB_PARALLEL_HPP
#define CHORDLAB_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace chordlab {

/// Runs fn(i) for i in [0, count) across up to `jobs` threads. Work is
/// assigned by index stride, so writers into index-addressed slots stay
/// deterministic regardless of the thread count. The first exception thrown
/// by any worker is rethrown on the calling thread.
inline void parallel_for(int count, int jobs,
                         const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  std::exception_ptr error;
  std::mutex error_mu;
  for (int t = 0; t < jobs; ++t) {
    threads.emplace_back([&, t]() {
      try {
        for (int i = t; i < count; i += jobs) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace chordlab

#endif  // CHORDLAB_PARALLEL_HPP
