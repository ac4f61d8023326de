#pragma once

// Maximally recoverable LRCs: parity-check assembly from a subspace direct
// sum system, exhaustive MR verification, and erasure encoding/decoding.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mrlrc/config.hpp"
#include "mrlrc/linalg.hpp"
#include "mrlrc/sdss.hpp"

namespace mrlrc {

/// n groups of r symbols, delta local and h global parities, over the top
/// level of `tower` (ell = q^m).
struct MrCodeSpec {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t h = 0;
  std::size_t delta = 0;
  FieldTower tower;

  std::size_t length() const noexcept { return n * r; }
  /// N - n*delta - h; may be non-positive for invalid specs, see validate().
  std::int64_t dimension() const noexcept {
    return static_cast<std::int64_t>(n * r) - static_cast<std::int64_t>(n * delta + h);
  }
  /// Throws PreconditionError unless 1 <= delta <= r-1, h >= 1, k >= 1.
  void validate() const;
};

/// H = [diag(A, ..., A); D_1 ... D_n] over F_ell, with A (delta x r) over F_q
/// shared by all groups and D_i (h x r) over F_ell.
class MrParityCheck {
 public:
  MrParityCheck(MrCodeSpec spec, FieldMatrix a, std::vector<FieldMatrix> d);

  const MrCodeSpec& spec() const noexcept { return spec_; }
  const FieldMatrix& local() const noexcept { return a_; }
  const std::vector<FieldMatrix>& global() const noexcept { return d_; }
  /// The assembled (n*delta + h) x N matrix at top level.
  const FieldMatrix& matrix() const noexcept { return h_; }

 private:
  MrCodeSpec spec_;
  FieldMatrix a_;
  std::vector<FieldMatrix> d_;
  FieldMatrix h_;
};

/// delta local erasures per group plus h extra positions (global indices).
struct ErasurePattern {
  std::vector<std::vector<std::size_t>> per_group;
  std::vector<std::size_t> extra;

  /// All positions, ascending.
  std::vector<std::size_t> positions() const;
  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
};

/// Row i is (alpha_j^{q^i})_j.
FieldMatrix moore_matrix(const FieldTower& tower, std::span<const std::uint32_t> alphas,
                         std::size_t h);
/// Determinant of the square Moore matrix as the product of sum c_i alpha_i
/// over direction vectors c; throws InternalError if elimination disagrees.
std::uint32_t moore_det(const FieldTower& tower, std::span<const std::uint32_t> alphas);
/// True iff row t of m is the entrywise q-th power of row t-1 for every t.
bool is_moore(const FieldMatrix& m);

/// delta x r MDS parity check over F_q: Reed-Solomon when r <= q+1, else the
/// single parity row (delta = 1) or (I | -1) (delta = r-1).
FieldMatrix local_mds_matrix(const FieldTower& tower, std::size_t r, std::size_t delta);

/// alpha_ij = the element with coordinates V_i's j-th basis vector.
MrParityCheck build_direct(const MrCodeSpec& spec, const SubspaceSystem& s);
/// beta_ij = sum_t inner[t][j] alpha_it for an s x r inner parity check over
/// F_q whose every h+delta columns are independent.
MrParityCheck build_concatenated(const MrCodeSpec& spec, const SubspaceSystem& s,
                                 const FieldMatrix& inner);

/// Enumeration order over maximal erasure patterns: per-group delta-subsets
/// (group 0 most significant, each in lexicographic order), then the extra
/// h-subset of the remaining positions in lexicographic order.
class PatternSpace {
 public:
  explicit PatternSpace(const MrCodeSpec& spec);

  /// C(r, delta)^n * C(N - n*delta, h), saturating.
  std::uint64_t size() const noexcept { return total_; }
  ErasurePattern at(std::uint64_t index) const;
  /// Sorted positions of pattern `index` written into `out`.
  void positions(std::uint64_t index, std::vector<std::size_t>& out) const;

 private:
  std::size_t n_, r_, h_, delta_;
  std::uint64_t local_choices_ = 0;
  std::uint64_t extra_choices_ = 0;
  std::uint64_t total_ = 0;
};

std::vector<ErasurePattern> enumerate_patterns(const MrCodeSpec& spec,
                                               const Budget& budget = Budget::from_env());

struct MrReport {
  bool ok = false;
  bool local_mds = false;
  std::uint64_t patterns_checked = 0;
  /// Number of sampled patterns, 0 for an exhaustive run.
  std::uint64_t sampled = 0;
  std::optional<ErasurePattern> first_failure;
};

/// Exhaustive check; throws BudgetExceeded when the pattern count exceeds
/// the subset budget.
MrReport verify_mr(const MrParityCheck& p, const Budget& budget = Budget::from_env());
/// Checks `samples` patterns drawn uniformly with a seeded generator.
MrReport verify_mr_sampled(const MrParityCheck& p, std::uint64_t samples, std::uint64_t seed);

/// k x N generator with G H^T = 0; throws InternalError if H is rank deficient.
FieldMatrix generator_from_parity(const MrParityCheck& p);
std::vector<std::uint32_t> encode(const FieldMatrix& g, std::span<const std::uint32_t> msg);

enum class DecodeStatus { recovered, undecodable, inconsistent };

struct DecodeResult {
  DecodeStatus status = DecodeStatus::undecodable;
  std::vector<std::uint32_t> codeword;
  /// For undecodable erasures: a nonzero codeword supported on the erased set.
  std::vector<std::uint32_t> certificate;
};

/// Fills the erased positions of `received` (their values are ignored),
/// repairing groups locally first and then solving the global system.
DecodeResult erase_decode(const MrParityCheck& p, std::span<const std::uint32_t> received,
                          std::span<const std::size_t> erased);

// `%MRLRC-MR v1`, tower line, `n= r= h= delta=`, A as a mid-level matrix,
// then the n blocks D_i as top-level matrices.
void write_mr(std::ostream& out, const MrParityCheck& p);
MrParityCheck read_mr(std::istream& in);

/// One element code per line.
void write_vector(std::ostream& out, std::span<const std::uint32_t> v);
std::vector<std::uint32_t> read_vector(std::istream& in, std::uint32_t field_size);

}  // namespace mrlrc
