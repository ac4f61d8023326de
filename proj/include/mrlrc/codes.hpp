#pragma once

// Component linear codes: Reed-Solomon and BCH parity checks, subfield
// subcodes, and block codes over F_q^{nr} measured in the block metric.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>

#include "mrlrc/config.hpp"
#include "mrlrc/linalg.hpp"

namespace mrlrc {

/// A linear code holding a generator and a parity-check matrix, both in
/// reduced row echelon form.
class LinearCode {
 public:
  static LinearCode from_parity_check(const FieldMatrix& h);
  static LinearCode from_generator(const FieldMatrix& g);

  const FieldTower& tower() const noexcept { return generator_.tower(); }
  Level level() const noexcept { return generator_.level(); }
  std::size_t length() const noexcept { return generator_.cols(); }
  std::size_t dimension() const noexcept { return generator_.rows(); }
  const FieldMatrix& generator() const noexcept { return generator_; }
  const FieldMatrix& parity_check() const noexcept { return parity_; }

  std::optional<std::size_t> known_distance() const noexcept { return distance_; }
  void set_known_distance(std::size_t d) noexcept { distance_ = d; }

 private:
  LinearCode(FieldMatrix g, FieldMatrix h) : generator_(std::move(g)), parity_(std::move(h)) {}

  FieldMatrix generator_;
  FieldMatrix parity_;
  std::optional<std::size_t> distance_;
};

/// A linear code of length n*r read as n blocks of r symbols.
struct BlockCode {
  LinearCode code;
  std::size_t block_size = 1;

  BlockCode(LinearCode c, std::size_t r);
  std::size_t blocks() const noexcept { return code.length() / block_size; }
};

/// delta x r MDS parity check over `level`: rows node^j (j < delta) on the
/// first r field elements, plus the column (0,...,0,1) when r = |F| + 1.
FieldMatrix rs_parity_check(const FieldTower& tower, Level level, std::size_t r,
                            std::size_t delta);

/// Parity check of the narrow-sense binary BCH code of length 2^t_exp - 1
/// and designed distance 2*delta+1, at the mid level of tower (2, 1, t_exp).
/// The designed distance is re-checked exhaustively when 2^k fits `budget`.
FieldMatrix bch_parity_check(std::uint32_t t_exp, std::size_t delta,
                             const Budget& budget = Budget::from_env());

/// Expands each top-level row into m rows over F_q (one per coordinate) and
/// returns the nonzero rows of the reduced result, at mid level.
FieldMatrix subfield_subcode(const FieldMatrix& h);

/// F_q-expansion of a code over F_{q^r} (top level, tower degree r) into a
/// block code over F_q with block size r.
BlockCode pi_expand(const LinearCode& code);

/// Number of nonzero r-blocks of v.
std::size_t block_weight(std::span<const std::uint32_t> v, std::size_t r);

/// Minimum block weight of a nonzero codeword; blocks()+1 for the zero code.
/// Enumerates the codebook when q^k fits the codebook budget, otherwise
/// searches block supports of increasing size within the subset budget.
std::size_t block_min_distance(const BlockCode& code, const Budget& budget = Budget::from_env());
std::size_t min_distance(const LinearCode& code, const Budget& budget = Budget::from_env());

// `%code n=<n> k=<k> r_block=<r>` followed by the parity check in matrix format.
void write_code(std::ostream& out, const BlockCode& code);
BlockCode read_code(std::istream& in);

}  // namespace mrlrc
