#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mrlrc {

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// a * b, saturating at UINT64_MAX.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

/// Advances `subset` (strictly increasing indices in [0, n)) to the next
/// k-subset in lexicographic order. Returns false after the last one.
bool next_combination(std::span<std::size_t> subset, std::size_t n);

/// The `rank`-th k-subset of [0, n) in lexicographic order.
std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k,
                                            std::uint64_t rank);

/// Splits [0, total) into at most `parts` contiguous half-open ranges.
std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(
    std::uint64_t total, unsigned parts);

}  // namespace mrlrc
