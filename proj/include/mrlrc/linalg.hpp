#pragma once

// Dense exact linear algebra over one level of a FieldTower.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mrlrc/gf.hpp"

namespace mrlrc {

class FieldMatrix {
 public:
  /// rows x cols zero matrix.
  FieldMatrix(FieldTower tower, Level level, std::size_t rows, std::size_t cols);
  /// Row-major entries; every code must be valid for `level`.
  FieldMatrix(FieldTower tower, Level level, std::size_t rows, std::size_t cols,
              std::vector<std::uint32_t> entries);

  static FieldMatrix identity(FieldTower tower, Level level, std::size_t k);

  const FieldTower& tower() const noexcept { return tower_; }
  Level level() const noexcept { return level_; }
  Field field() const noexcept { return tower_.field(level_); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::uint32_t code);

  std::span<const std::uint32_t> row(std::size_t r) const noexcept {
    return {entries_.data() + r * cols_, cols_};
  }
  std::vector<std::uint32_t> column(std::size_t c) const;
  const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }

  FieldMatrix transpose() const;
  FieldMatrix select_columns(std::span<const std::size_t> cols) const;
  FieldMatrix select_rows(std::size_t begin, std::size_t end) const;
  /// Same codes viewed at a higher level (subfield embedding).
  FieldMatrix lift(Level level) const;
  /// Same mid-level codes in another tower over the same F_q.
  FieldMatrix rehome(const FieldTower& tower) const;
  /// Stacks `below` under this matrix.
  FieldMatrix vstack(const FieldMatrix& below) const;

  /// Row vector times matrix.
  std::vector<std::uint32_t> left_multiply(std::span<const std::uint32_t> v) const;
  /// Matrix times column vector.
  std::vector<std::uint32_t> multiply(std::span<const std::uint32_t> v) const;

  friend FieldMatrix operator*(const FieldMatrix& x, const FieldMatrix& y);
  friend FieldMatrix operator+(const FieldMatrix& x, const FieldMatrix& y);
  friend FieldMatrix operator-(const FieldMatrix& x, const FieldMatrix& y);
  friend bool operator==(const FieldMatrix& x, const FieldMatrix& y) noexcept {
    return x.tower_ == y.tower_ && x.level_ == y.level_ && x.rows_ == y.rows_ &&
           x.cols_ == y.cols_ && x.entries_ == y.entries_;
  }

 private:
  FieldTower tower_;
  Level level_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> entries_;
};

struct RrefResult {
  FieldMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form; pivots are chosen as the first nonzero entry
/// at or below the current row, scanning columns left to right.
RrefResult rref(const FieldMatrix& m);
std::size_t rank(const FieldMatrix& m);

/// One solution of M x = b with free variables set to zero, or nullopt when
/// the system is inconsistent.
std::optional<std::vector<std::uint32_t>> solve(const FieldMatrix& m,
                                                std::span<const std::uint32_t> b);

/// Rows form a basis of {x : M x^T = 0}, one per free column of rref(M) in
/// ascending column order.
FieldMatrix kernel(const FieldMatrix& m);

/// Nonzero rows of rref(M).
FieldMatrix row_basis(const FieldMatrix& m);

/// True iff the selected columns are linearly independent.
bool columns_independent(const FieldMatrix& m, std::span<const std::size_t> cols);

/// True iff every delta-subset of A's columns is independent (A is a
/// generator of an [r, delta, r-delta+1] MDS code). A must have delta rows.
bool is_mds_parity_check(const FieldMatrix& a, std::size_t delta);

/// True iff every `t`-subset of columns is independent.
bool every_column_subset_independent(const FieldMatrix& m, std::size_t t);

/// Determinant of a square matrix by elimination.
std::uint32_t determinant(const FieldMatrix& m);

// In-place kernels on raw row-major buffers, used by the verifiers.
std::vector<std::size_t> rref_inplace(Field f, std::span<std::uint32_t> data,
                                      std::size_t rows, std::size_t cols);
std::size_t rank_inplace(Field f, std::span<std::uint32_t> data, std::size_t rows,
                         std::size_t cols);

/// Incrementally grown echelon basis of a subspace of F^dim, for fast
/// membership tests.
class ReducedBasis {
 public:
  ReducedBasis(Field f, std::size_t dim) : f_(f), dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return pivots_.size(); }

  /// Adds v; returns false (and leaves the basis unchanged) if v is in the span.
  bool insert(std::span<const std::uint32_t> v);
  bool contains(std::span<const std::uint32_t> v) const;

 private:
  void reduce(std::vector<std::uint32_t>& v) const;

  Field f_;
  std::size_t dim_;
  std::vector<std::vector<std::uint32_t>> rows_;  // pivot entry normalised to 1
  std::vector<std::size_t> pivots_;
};

// Matrix text format:
//   %MRLRC-MATRIX v1
//   <tower line>
//   level=<prime|mid|top> rows=<R> cols=<C>
//   R lines of C space-separated codes
void write_matrix(std::ostream& out, const FieldMatrix& m);
FieldMatrix read_matrix(std::istream& in);

}  // namespace mrlrc
