#pragma once

#include <cstdint>

namespace mrlrc {

// Desk-scale enumeration limits. MRLRC_BUDGET overrides the subset/pattern
// budget, MRLRC_CODEBOOK_BUDGET the codeword budget.
inline constexpr std::uint64_t kDefaultSubsetBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultCodebookBudget = std::uint64_t{1} << 20;

// Largest field (p^(a*m)) a tower may describe.
inline constexpr std::uint64_t kTowerSizeCap = std::uint64_t{1} << 24;

struct Budget {
  std::uint64_t subsets = kDefaultSubsetBudget;   // h-subsets, erasure patterns
  std::uint64_t codebook = kDefaultCodebookBudget;  // codewords per enumeration

  /// Defaults with the environment overrides applied.
  static Budget from_env();
};

/// Worker threads used by the verifiers (MRLRC_THREADS, else hardware).
unsigned worker_count();

}  // namespace mrlrc
