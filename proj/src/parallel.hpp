// Copyright 2026 The divconst Authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace divconst::detail {

/// Runs fn(i) for i in [0, chunks) on up to `jobs` threads and returns the
/// results indexed by chunk, so merging in order is independent of scheduling.
/// The first exception thrown by any chunk is rethrown on the caller.
template <class Result, class Fn>
std::vector<Result> run_chunks(std::uint64_t chunks, unsigned jobs, Fn&& fn) {
  std::vector<Result> results(chunks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= chunks || failed.load(std::memory_order_relaxed)) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  const auto cap = static_cast<unsigned>(std::min<std::uint64_t>(chunks, 256));
  jobs = std::clamp(jobs, 1u, std::max(cap, 1u));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace divconst::detail
