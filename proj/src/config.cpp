#include "mrlrc/config.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>

namespace mrlrc {
namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::uint64_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) return fallback;
  return value;
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  b.subsets = env_u64("MRLRC_BUDGET", kDefaultSubsetBudget);
  b.codebook = env_u64("MRLRC_CODEBOOK_BUDGET", kDefaultCodebookBudget);
  return b;
}

unsigned worker_count() {
  const auto hw = std::thread::hardware_concurrency();
  auto n = env_u64("MRLRC_THREADS", hw == 0 ? 1 : hw);
  if (n > 256) n = 256;
  return static_cast<unsigned>(n);
}

}  // namespace mrlrc
