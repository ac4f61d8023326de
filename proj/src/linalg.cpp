#include "mrlrc/linalg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "mrlrc/combinatorics.hpp"
#include "mrlrc/errors.hpp"
#include "textio.hpp"

namespace mrlrc {

FieldMatrix::FieldMatrix(FieldTower tower, Level level, std::size_t rows, std::size_t cols)
    : tower_(std::move(tower)), level_(level), rows_(rows), cols_(cols),
      entries_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(FieldTower tower, Level level, std::size_t rows, std::size_t cols,
                         std::vector<std::uint32_t> entries)
    : tower_(std::move(tower)), level_(level), rows_(rows), cols_(cols),
      entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw PreconditionError("matrix entry count does not match its shape");
  }
  const auto size = tower_.size(level_);
  for (auto c : entries_) {
    if (c >= size) throw PreconditionError("matrix entry code out of range for its level");
  }
}

FieldMatrix FieldMatrix::identity(FieldTower tower, Level level, std::size_t k) {
  FieldMatrix m(std::move(tower), level, k, k);
  for (std::size_t i = 0; i < k; ++i) m.entries_[i * k + i] = 1;
  return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::uint32_t code) {
  if (r >= rows_ || c >= cols_) throw PreconditionError("matrix index out of range");
  if (code >= tower_.size(level_)) throw PreconditionError("matrix entry code out of range");
  entries_[r * cols_ + c] = code;
}

std::vector<std::uint32_t> FieldMatrix::column(std::size_t c) const {
  std::vector<std::uint32_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(tower_, level_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = (*this)(r, c);
  }
  return t;
}

FieldMatrix FieldMatrix::select_columns(std::span<const std::size_t> cols) const {
  FieldMatrix s(tower_, level_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw PreconditionError("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) s.entries_[r * cols.size() + j] = (*this)(r, cols[j]);
  }
  return s;
}

FieldMatrix FieldMatrix::select_rows(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw PreconditionError("row range out of bounds");
  return FieldMatrix(tower_, level_, end - begin, cols_,
                     std::vector<std::uint32_t>(entries_.begin() + begin * cols_,
                                                entries_.begin() + end * cols_));
}

FieldMatrix FieldMatrix::lift(Level level) const {
  if (level < level_) throw PreconditionError("lift must go to an equal or higher level");
  FieldMatrix out = *this;
  out.level_ = level;
  return out;
}

FieldMatrix FieldMatrix::rehome(const FieldTower& tower) const {
  if (!tower_.same_base(tower)) throw PreconditionError("towers have different base fields");
  if (level_ == Level::top && !(tower_ == tower)) {
    throw PreconditionError("top-level matrices cannot change tower");
  }
  FieldMatrix out = *this;
  out.tower_ = tower;
  return out;
}

FieldMatrix FieldMatrix::vstack(const FieldMatrix& below) const {
  if (!(tower_ == below.tower_) || level_ != below.level_ || cols_ != below.cols_) {
    throw PreconditionError("vstack shape or field mismatch");
  }
  auto e = entries_;
  e.insert(e.end(), below.entries_.begin(), below.entries_.end());
  return FieldMatrix(tower_, level_, rows_ + below.rows_, cols_, std::move(e));
}

std::vector<std::uint32_t> FieldMatrix::left_multiply(std::span<const std::uint32_t> v) const {
  if (v.size() != rows_) throw PreconditionError("vector length does not match matrix rows");
  const Field f = field();
  std::vector<std::uint32_t> out(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) out[c] = f.add(out[c], f.mul(v[r], (*this)(r, c)));
  }
  return out;
}

std::vector<std::uint32_t> FieldMatrix::multiply(std::span<const std::uint32_t> v) const {
  if (v.size() != cols_) throw PreconditionError("vector length does not match matrix columns");
  const Field f = field();
  std::vector<std::uint32_t> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint32_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = f.add(acc, f.mul((*this)(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

FieldMatrix operator*(const FieldMatrix& x, const FieldMatrix& y) {
  if (!(x.tower_ == y.tower_) || x.level_ != y.level_ || x.cols_ != y.rows_) {
    throw PreconditionError("matrix product shape or field mismatch");
  }
  const Field f = x.field();
  FieldMatrix out(x.tower_, x.level_, x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      const auto a = x(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < y.cols_; ++j) {
        auto& e = out.entries_[i * y.cols_ + j];
        e = f.add(e, f.mul(a, y(k, j)));
      }
    }
  }
  return out;
}

namespace {

FieldMatrix elementwise(const FieldMatrix& x, const FieldMatrix& y, bool subtract) {
  if (!(x.tower() == y.tower()) || x.level() != y.level() || x.rows() != y.rows() ||
      x.cols() != y.cols()) {
    throw PreconditionError("matrix sum shape or field mismatch");
  }
  const Field f = x.field();
  std::vector<std::uint32_t> e(x.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = subtract ? f.sub(x.entries()[i], y.entries()[i]) : f.add(x.entries()[i], y.entries()[i]);
  }
  return FieldMatrix(x.tower(), x.level(), x.rows(), x.cols(), std::move(e));
}

}  // namespace

FieldMatrix operator+(const FieldMatrix& x, const FieldMatrix& y) { return elementwise(x, y, false); }
FieldMatrix operator-(const FieldMatrix& x, const FieldMatrix& y) { return elementwise(x, y, true); }

std::vector<std::size_t> rref_inplace(Field f, std::span<std::uint32_t> data, std::size_t rows,
                                      std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    std::size_t sel = prow;
    while (sel < rows && data[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != prow) {
      std::swap_ranges(data.begin() + sel * cols, data.begin() + (sel + 1) * cols,
                       data.begin() + prow * cols);
    }
    std::uint32_t* pr = data.data() + prow * cols;
    const std::uint32_t s = f.inv(pr[c]);
    if (s != 1) {
      for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], s);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == prow) continue;
      std::uint32_t* rr = data.data() + r * cols;
      const std::uint32_t factor = rr[c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j) rr[j] = f.sub(rr[j], f.mul(factor, pr[j]));
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

std::size_t rank_inplace(Field f, std::span<std::uint32_t> data, std::size_t rows,
                         std::size_t cols) {
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    std::size_t sel = prow;
    while (sel < rows && data[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != prow) {
      std::swap_ranges(data.begin() + sel * cols, data.begin() + (sel + 1) * cols,
                       data.begin() + prow * cols);
    }
    const std::uint32_t* pr = data.data() + prow * cols;
    const std::uint32_t pinv = f.inv(pr[c]);
    for (std::size_t r = prow + 1; r < rows; ++r) {
      std::uint32_t* rr = data.data() + r * cols;
      if (rr[c] == 0) continue;
      const std::uint32_t factor = f.mul(rr[c], pinv);
      for (std::size_t j = c; j < cols; ++j) rr[j] = f.sub(rr[j], f.mul(factor, pr[j]));
    }
    ++prow;
  }
  return prow;
}

RrefResult rref(const FieldMatrix& m) {
  auto e = m.entries();
  auto pivots = rref_inplace(m.field(), e, m.rows(), m.cols());
  const auto rk = pivots.size();
  return {FieldMatrix(m.tower(), m.level(), m.rows(), m.cols(), std::move(e)), rk,
          std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) {
  auto e = m.entries();
  return rank_inplace(m.field(), e, m.rows(), m.cols());
}

std::optional<std::vector<std::uint32_t>> solve(const FieldMatrix& m,
                                                std::span<const std::uint32_t> b) {
  if (b.size() != m.rows()) throw PreconditionError("right-hand side length does not match rows");
  const std::size_t n = m.cols(), w = n + 1;
  std::vector<std::uint32_t> aug(m.rows() * w);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::copy(m.row(r).begin(), m.row(r).end(), aug.begin() + r * w);
    aug[r * w + n] = b[r];
  }
  const auto pivots = rref_inplace(m.field(), aug, m.rows(), w);
  std::vector<std::uint32_t> x(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == n) return std::nullopt;
    x[pivots[i]] = aug[i * w + n];
  }
  return x;
}

FieldMatrix kernel(const FieldMatrix& m) {
  const auto R = rref(m);
  const Field f = m.field();
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : R.pivots) is_pivot[p] = true;
  std::vector<std::uint32_t> out;
  std::size_t count = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < R.pivots.size(); ++i) v[R.pivots[i]] = f.neg(R.reduced(i, free));
    out.insert(out.end(), v.begin(), v.end());
    ++count;
  }
  return FieldMatrix(m.tower(), m.level(), count, n, std::move(out));
}

FieldMatrix row_basis(const FieldMatrix& m) {
  const auto R = rref(m);
  return R.reduced.select_rows(0, R.rank);
}

bool columns_independent(const FieldMatrix& m, std::span<const std::size_t> cols) {
  for (auto c : cols) {
    if (c >= m.cols()) throw PreconditionError("column index out of range");
  }
  if (cols.size() > m.rows()) return false;
  const std::size_t k = cols.size();
  std::vector<std::uint32_t> sub(m.rows() * k);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t j = 0; j < k; ++j) sub[r * k + j] = m(r, cols[j]);
  }
  return rank_inplace(m.field(), sub, m.rows(), k) == k;
}

bool every_column_subset_independent(const FieldMatrix& m, std::size_t t) {
  if (t > m.cols()) throw PreconditionError("subset size exceeds the column count");
  if (t == 0) return true;
  std::vector<std::size_t> subset(t);
  for (std::size_t i = 0; i < t; ++i) subset[i] = i;
  do {
    if (!columns_independent(m, subset)) return false;
  } while (next_combination(subset, m.cols()));
  return true;
}

bool is_mds_parity_check(const FieldMatrix& a, std::size_t delta) {
  if (delta > a.cols()) throw PreconditionError("delta exceeds the number of columns");
  if (a.rows() != delta) throw PreconditionError("MDS check expects exactly delta rows");
  return every_column_subset_independent(a, delta);
}

std::uint32_t determinant(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  const Field f = m.field();
  const std::size_t n = m.rows();
  auto e = m.entries();
  std::uint32_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && e[sel * n + c] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      std::swap_ranges(e.begin() + sel * n, e.begin() + (sel + 1) * n, e.begin() + c * n);
      det = f.neg(det);
    }
    const std::uint32_t piv = e[c * n + c];
    det = f.mul(det, piv);
    const std::uint32_t pinv = f.inv(piv);
    for (std::size_t r = c + 1; r < n; ++r) {
      const std::uint32_t factor = f.mul(e[r * n + c], pinv);
      if (factor == 0) continue;
      for (std::size_t j = c; j < n; ++j) e[r * n + j] = f.sub(e[r * n + j], f.mul(factor, e[c * n + j]));
    }
  }
  return det;
}

void ReducedBasis::reduce(std::vector<std::uint32_t>& v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::uint32_t factor = v[pivots_[i]];
    if (factor == 0) continue;
    const auto& row = rows_[i];
    for (std::size_t j = 0; j < dim_; ++j) {
      if (row[j] != 0) v[j] = f_.sub(v[j], f_.mul(factor, row[j]));
    }
  }
}

bool ReducedBasis::contains(std::span<const std::uint32_t> v) const {
  std::vector<std::uint32_t> w(v.begin(), v.end());
  reduce(w);
  return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
}

bool ReducedBasis::insert(std::span<const std::uint32_t> v) {
  if (v.size() != dim_) throw PreconditionError("vector dimension mismatch");
  std::vector<std::uint32_t> w(v.begin(), v.end());
  reduce(w);
  std::size_t piv = 0;
  while (piv < dim_ && w[piv] == 0) ++piv;
  if (piv == dim_) return false;
  const std::uint32_t s = f_.inv(w[piv]);
  for (auto& x : w) x = f_.mul(x, s);
  // Keep the basis fully reduced so that reduce() needs one pass.
  for (auto& row : rows_) {
    const std::uint32_t factor = row[piv];
    if (factor == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) row[j] = f_.sub(row[j], f_.mul(factor, w[j]));
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(piv);
  return true;
}

void write_matrix(std::ostream& out, const FieldMatrix& m) {
  out << "%MRLRC-MATRIX v1\n" << m.tower().to_string() << "\n";
  out << "level=" << to_string(m.level()) << " rows=" << m.rows() << " cols=" << m.cols() << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c != 0) out << ' ';
      out << m(r, c);
    }
    out << '\n';
  }
}

FieldMatrix read_matrix(std::istream& in) {
  textio::expect_line(in, "%MRLRC-MATRIX v1");
  const auto tower = FieldTower::parse(textio::read_line(in, "tower line"));
  const auto kv = textio::parse_key_values(textio::read_line(in, "matrix shape line"));
  auto it = kv.find("level");
  if (it == kv.end()) throw FormatError("missing key 'level'");
  const Level level = parse_level(it->second);
  const auto rows = textio::require_u64(kv, "rows");
  const auto cols = textio::require_u64(kv, "cols");
  if (kv.size() != 3) throw FormatError("unexpected keys in matrix shape line");
  std::vector<std::uint32_t> entries;
  entries.reserve(rows * cols);
  for (std::uint64_t r = 0; r < rows; ++r) {
    const auto line = textio::read_line(in, "matrix row");
    const auto tokens = textio::split_ws(line);
    if (tokens.size() != cols) throw FormatError("matrix row has the wrong number of entries");
    for (auto t : tokens) entries.push_back(textio::parse_u32(t));
  }
  try {
    return FieldMatrix(tower, level, rows, cols, std::move(entries));
  } catch (const PreconditionError& e) {
    throw FormatError(e.what());
  }
}

}  // namespace mrlrc
