#pragma once

// Subspace direct sum systems S_q(n, m, r, h): n subspaces of F_q^m of
// dimension r, any h of which form a direct sum.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mrlrc/codes.hpp"
#include "mrlrc/config.hpp"
#include "mrlrc/gf.hpp"
#include "mrlrc/linalg.hpp"

namespace mrlrc {

/// F_q = F_{p^a}, the field the subspaces live over.
struct BaseField {
  std::uint32_t p = 2;
  std::uint32_t a = 1;
};

struct DirectSumReport {
  bool ok = false;
  std::uint64_t subsets_checked = 0;
  bool sampled = false;
  /// A group whose basis is dependent, if any.
  std::optional<std::size_t> degenerate_group;
  /// The first h-subset (lexicographic) whose sum is not direct.
  std::optional<std::vector<std::size_t>> failing_subset;
};

class SubspaceSystem {
 public:
  /// `vectors` holds n*r vectors of m = tower.m() mid-level codes, group-major.
  SubspaceSystem(FieldTower tower, std::size_t n, std::size_t r, std::size_t h,
                 std::vector<std::uint32_t> vectors);

  const FieldTower& tower() const noexcept { return tower_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return r_; }
  std::size_t h() const noexcept { return h_; }
  std::size_t m() const noexcept { return tower_.m(); }
  std::uint32_t q() const noexcept { return tower_.q(); }

  /// j-th basis vector of V_i as m coordinates over F_q.
  std::span<const std::uint32_t> vector(std::size_t i, std::size_t j) const;
  /// The same vector as a top-level element (coordinates over fq_basis).
  std::uint32_t element(std::size_t i, std::size_t j) const;
  /// m x nr matrix whose column i*r+j is vector(i, j).
  FieldMatrix basis_matrix() const;
  const std::vector<std::uint32_t>& vectors() const noexcept { return vectors_; }

  bool certified() const noexcept { return certified_; }
  /// Exhaustive verification; sets the certified flag on success.
  DirectSumReport certify(const Budget& budget = Budget::from_env());
  /// Marks the system certified without checking (file loading after a
  /// successful re-verification).
  void mark_certified(bool value) noexcept { certified_ = value; }
  /// Number of h-subsets checked by sampling when exhaustive verification
  /// was over budget; 0 otherwise.
  std::uint64_t sampled() const noexcept { return sampled_; }
  void set_sampled(std::uint64_t count) noexcept { sampled_ = count; }

 private:
  FieldTower tower_;
  std::size_t n_, r_, h_;
  std::vector<std::uint32_t> vectors_;
  bool certified_ = false;
  std::uint64_t sampled_ = 0;
};

/// Checks every group has rank r and every h-subset sums to rank h*r.
/// Throws BudgetExceeded when C(n, h) exceeds the subset budget.
DirectSumReport verify_direct_sum(const SubspaceSystem& s, const Budget& budget = Budget::from_env());
/// The same checks on `samples` uniformly drawn h-subsets.
DirectSumReport verify_direct_sum_sampled(const SubspaceSystem& s, std::uint64_t samples,
                                          std::uint64_t seed);

/// Greedy construction in F_q^m with m = tower.m(); refuses m < gv_m.
SubspaceSystem gv_greedy(const FieldTower& tower, std::size_t n, std::size_t r, std::size_t h);

/// S_q(n, hr, r, h) from a q^r-ary [n, n-h, h+1] MDS code; n <= q^r + 1,
/// h <= n (h = n gives the block-diagonal system).
SubspaceSystem mds_construct(BaseField base, std::size_t n, std::size_t r, std::size_t h);

/// System with n = 1 + q^{ur} from the F_q-rational part of the q^{ur}-ary
/// MDS block code; m is the achieved rank of the expanded constraints.
SubspaceSystem subfield_construct(BaseField base, std::size_t u, std::size_t r, std::size_t h,
                                  const Budget& budget = Budget::from_env());

/// Block code over F_q with parity check basis_matrix(); needs a certified system.
BlockCode to_block_code(const SubspaceSystem& s);
/// Groups the columns of the dual generator into n subspaces. Requires
/// block distance >= h+1; the result is certified.
SubspaceSystem from_block_code(const BlockCode& code, std::size_t h,
                               const Budget& budget = Budget::from_env());

struct BoundsReport {
  std::uint64_t gv_m = 0;
  std::uint64_t hamming_lower = 0;
  std::uint64_t singleton_lower = 0;
};

/// gv_m = r + floor(log_q sum_{i<h} C(n-1,i)(q^r-1)^i);
/// hamming_lower = ceil(log_q sum_{i<=h/2} C(n,i)(q^r-1)^i), or h*r when h = 1;
/// singleton_lower = h*r.
BoundsReport bounds(std::uint64_t q, std::uint64_t n, std::uint64_t r, std::uint64_t h);

// `%MRLRC-SDSS v1`, tower line, `n= r= h= m= certified=`, then n*r lines of
// m codes. A system stored as certified is re-verified when read.
void write_sdss(std::ostream& out, const SubspaceSystem& s);
SubspaceSystem read_sdss(std::istream& in, const Budget& budget = Budget::from_env());

}  // namespace mrlrc
