#include "mrlrc/codes.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "mrlrc/combinatorics.hpp"
#include "mrlrc/errors.hpp"
#include "textio.hpp"

namespace mrlrc {

LinearCode LinearCode::from_parity_check(const FieldMatrix& h) {
  return LinearCode(row_basis(kernel(h)), row_basis(h));
}

LinearCode LinearCode::from_generator(const FieldMatrix& g) {
  return LinearCode(row_basis(g), row_basis(kernel(g)));
}

BlockCode::BlockCode(LinearCode c, std::size_t r) : code(std::move(c)), block_size(r) {
  if (r == 0 || code.length() % r != 0) {
    throw PreconditionError("code length is not a multiple of the block size");
  }
}

FieldMatrix rs_parity_check(const FieldTower& tower, Level level, std::size_t r,
                            std::size_t delta) {
  const std::size_t size = tower.size(level);
  if (r > size + 1) {
    throw PreconditionError("Reed-Solomon parity check needs r <= field size + 1; raise q");
  }
  if (delta < 1 || delta >= r) throw PreconditionError("Reed-Solomon parity check needs 1 <= delta <= r-1");
  const Field f = tower.field(level);
  const bool extended = r == size + 1;
  const std::size_t nodes = extended ? size : r;
  FieldMatrix h(tower, level, delta, r);
  for (std::size_t c = 0; c < nodes; ++c) {
    for (std::size_t j = 0; j < delta; ++j) {
      h.set(j, c, f.pow(static_cast<std::uint32_t>(c), j));
    }
  }
  if (extended) h.set(delta - 1, r - 1, 1);
  return h;
}

namespace {

bool is_primitive(Field f, std::uint32_t x) {
  const std::uint64_t order = f.size() - 1;
  std::uint64_t rest = order;
  for (std::uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    if (f.pow(x, order / d) == 1) return false;
    while (rest % d == 0) rest /= d;
  }
  if (rest > 1 && f.pow(x, order / rest) == 1) return false;
  return x != 0;
}

}  // namespace

FieldMatrix bch_parity_check(std::uint32_t t_exp, std::size_t delta, const Budget& budget) {
  if (t_exp < 2) throw PreconditionError("BCH extension degree must be at least 2");
  const std::size_t r = (std::size_t{1} << t_exp) - 1;
  if (delta < 1 || delta * t_exp >= r) throw PreconditionError("BCH code needs delta >= 1 and delta*t_exp < 2^t_exp - 1");
  const auto tower = FieldTower::make(2, 1, t_exp);
  const Field top = tower.field(Level::top);
  std::uint32_t beta = tower.q();
  if (!is_primitive(top, beta)) {
    beta = 2;
    while (!is_primitive(top, beta)) ++beta;
  }
  FieldMatrix h(tower, Level::top, delta, r);
  for (std::size_t row = 0; row < delta; ++row) {
    const std::uint64_t i = 2 * row + 1;
    for (std::size_t j = 0; j < r; ++j) h.set(row, j, top.pow(beta, i * j));
  }
  auto binary = subfield_subcode(h);
  auto code = LinearCode::from_parity_check(binary);
  if (code.dimension() < std::numeric_limits<std::uint64_t>::digits &&
      (std::uint64_t{1} << code.dimension()) <= budget.codebook) {
    const auto d = min_distance(code, budget);
    if (d < 2 * delta + 1) throw InternalError("BCH code misses its designed distance");
  }
  return binary;
}

FieldMatrix subfield_subcode(const FieldMatrix& h) {
  if (h.level() != Level::top) throw PreconditionError("subfield subcode expects a top-level matrix");
  const auto& tower = h.tower();
  const std::size_t u = tower.m();
  std::vector<std::uint32_t> rows(h.rows() * u * h.cols());
  std::vector<std::uint32_t> coords(u);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t c = 0; c < h.cols(); ++c) {
      tower.coordinates(h(i, c), coords.data());
      for (std::size_t t = 0; t < u; ++t) rows[((i * u) + t) * h.cols() + c] = coords[t];
    }
  }
  return row_basis(FieldMatrix(tower, Level::mid, h.rows() * u, h.cols(), std::move(rows)));
}

BlockCode pi_expand(const LinearCode& code) {
  if (code.level() != Level::top) throw PreconditionError("pi expansion expects a top-level code");
  const auto& tower = code.tower();
  const Field top = tower.field(Level::top);
  const std::size_t r = tower.m();
  const std::size_t n = code.length();
  const auto basis = tower.fq_basis();
  const auto& g = code.generator();
  std::vector<std::uint32_t> rows;
  rows.reserve(g.rows() * r * n * r);
  std::vector<std::uint32_t> coords(r);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (const auto& lambda : basis) {
      for (std::size_t c = 0; c < n; ++c) {
        tower.coordinates(top.mul(lambda.code, g(i, c)), coords.data());
        rows.insert(rows.end(), coords.begin(), coords.end());
      }
    }
  }
  FieldMatrix expanded(tower, Level::mid, g.rows() * r, n * r, std::move(rows));
  return BlockCode(LinearCode::from_generator(expanded), r);
}

std::size_t block_weight(std::span<const std::uint32_t> v, std::size_t r) {
  if (r == 0 || v.size() % r != 0) throw PreconditionError("vector length is not a multiple of the block size");
  std::size_t w = 0;
  for (std::size_t b = 0; b < v.size(); b += r) {
    for (std::size_t j = 0; j < r; ++j) {
      if (v[b + j] != 0) {
        ++w;
        break;
      }
    }
  }
  return w;
}

namespace {

std::size_t enumerate_distance(const BlockCode& code) {
  const auto& g = code.code.generator();
  const Field f = g.field();
  const std::size_t len = g.cols();
  const std::uint32_t p = f.characteristic();
  std::uint32_t digits_per_symbol = 0;
  for (std::uint32_t s = 1; s < f.size(); s *= p) ++digits_per_symbol;

  std::vector<std::vector<std::uint32_t>> steps;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    std::uint32_t scalar = 1;
    for (std::uint32_t b = 0; b < digits_per_symbol; ++b, scalar *= p) {
      std::vector<std::uint32_t> v(len);
      for (std::size_t c = 0; c < len; ++c) v[c] = f.mul(scalar, g(i, c));
      steps.push_back(std::move(v));
    }
  }
  std::vector<std::uint32_t> digit(steps.size(), 0);
  std::vector<std::uint32_t> word(len, 0);
  std::size_t best = code.blocks() + 1;
  while (true) {
    std::size_t pos = 0;
    while (pos < steps.size()) {
      for (std::size_t c = 0; c < len; ++c) word[c] = f.add(word[c], steps[pos][c]);
      if (++digit[pos] < p) break;
      digit[pos] = 0;
      ++pos;
    }
    if (pos == steps.size()) break;
    best = std::min(best, block_weight(word, code.block_size));
    if (best == 1) break;
  }
  return best;
}

std::size_t support_distance(const BlockCode& code, const Budget& budget) {
  const auto& h = code.code.parity_check();
  const std::size_t n = code.blocks(), r = code.block_size;
  std::uint64_t spent = 0;
  for (std::size_t w = 1; w <= n; ++w) {
    spent += binomial(n, w);
    if (spent > budget.subsets) {
      throw BudgetExceeded("block distance search exceeds the enumeration budget");
    }
    std::vector<std::size_t> blocks(w);
    for (std::size_t i = 0; i < w; ++i) blocks[i] = i;
    std::vector<std::size_t> cols(w * r);
    do {
      for (std::size_t i = 0; i < w; ++i) {
        for (std::size_t j = 0; j < r; ++j) cols[i * r + j] = blocks[i] * r + j;
      }
      if (!columns_independent(h, cols)) return w;
    } while (next_combination(blocks, n));
  }
  return n + 1;
}

}  // namespace

std::size_t block_min_distance(const BlockCode& code, const Budget& budget) {
  const std::size_t k = code.code.dimension();
  if (k == 0) return code.blocks() + 1;
  std::uint64_t codebook = 1;
  for (std::size_t i = 0; i < k && codebook <= budget.codebook; ++i) {
    codebook = saturating_mul(codebook, code.code.tower().size(code.code.level()));
  }
  if (codebook <= budget.codebook) return enumerate_distance(code);
  return support_distance(code, budget);
}

std::size_t min_distance(const LinearCode& code, const Budget& budget) {
  return block_min_distance(BlockCode(code, 1), budget);
}

void write_code(std::ostream& out, const BlockCode& code) {
  out << "%code n=" << code.blocks() << " k=" << code.code.dimension()
      << " r_block=" << code.block_size << "\n";
  write_matrix(out, code.code.parity_check());
}

BlockCode read_code(std::istream& in) {
  const auto header = textio::read_line(in, "code header");
  if (!header.starts_with("%code ")) throw FormatError("missing %code header");
  const auto kv = textio::parse_key_values(std::string_view(header).substr(6));
  const auto n = textio::require_u64(kv, "n");
  const auto k = textio::require_u64(kv, "k");
  const auto r = textio::require_u64(kv, "r_block");
  if (r == 0) throw FormatError("r_block must be positive");
  const auto h = read_matrix(in);
  if (h.cols() != n * r) throw FormatError("code length does not match n * r_block");
  auto code = LinearCode::from_parity_check(h);
  if (code.dimension() != k) throw FormatError("code dimension does not match its header");
  return BlockCode(std::move(code), r);
}

}  // namespace mrlrc
