#pragma once

// Parallel search for the smallest failing index of an independent check.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "mrlrc/combinatorics.hpp"

namespace mrlrc::detail {

/// `make_checker()` is called once per worker and must return a callable
/// `bool(std::uint64_t index)` that reports whether the check passes.
/// Returns the smallest failing index in [0, total), if any. Workers skip
/// indices above the smallest failure found so far.
template <class MakeChecker>
std::optional<std::uint64_t> find_first_failure(std::uint64_t total, unsigned workers,
                                                MakeChecker make_checker) {
  constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> first{kNone};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    try {
      auto check = make_checker();
      for (std::uint64_t i = begin; i < end; ++i) {
        if (i >= first.load(std::memory_order_relaxed)) return;
        if (!check(i)) {
          std::uint64_t cur = first.load();
          while (i < cur && !first.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      first.store(0);
    }
  };

  const auto ranges = split_range(total, std::max(1u, workers));
  if (ranges.size() <= 1) {
    if (!ranges.empty()) run(ranges[0].first, ranges[0].second);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(ranges.size());
    for (const auto& [b, e] : ranges) threads.emplace_back(run, b, e);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  const auto f = first.load();
  if (f == kNone) return std::nullopt;
  return f;
}

}  // namespace mrlrc::detail
