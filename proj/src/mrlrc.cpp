#include "mrlrc/mrlrc.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "mrlrc/codes.hpp"
#include "mrlrc/combinatorics.hpp"
#include "mrlrc/errors.hpp"
#include "parallel.hpp"
#include "textio.hpp"

namespace mrlrc {

void MrCodeSpec::validate() const {
  if (n == 0) throw PreconditionError("MR code needs at least one group");
  if (r < 2 || delta < 1 || delta > r - 1) throw PreconditionError("MR code needs 1 <= delta <= r-1");
  if (h < 1) throw PreconditionError("MR code needs h >= 1");
  if (dimension() < 1) throw PreconditionError("MR code needs k = N - n*delta - h >= 1");
}

namespace {

FieldMatrix assemble(const MrCodeSpec& spec, const FieldMatrix& a, const std::vector<FieldMatrix>& d) {
  const std::size_t n = spec.n, r = spec.r, delta = spec.delta, h = spec.h;
  FieldMatrix out(spec.tower, Level::top, n * delta + h, n * r);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t i = 0; i < delta; ++i) {
      for (std::size_t j = 0; j < r; ++j) out.set(g * delta + i, g * r + j, a(i, j));
    }
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < r; ++j) out.set(n * delta + i, g * r + j, d[g](i, j));
    }
  }
  return out;
}

}  // namespace

MrParityCheck::MrParityCheck(MrCodeSpec spec, FieldMatrix a, std::vector<FieldMatrix> d)
    : spec_(std::move(spec)), a_(std::move(a)), d_(std::move(d)),
      h_(spec_.tower, Level::top, 0, 0) {
  spec_.validate();
  if (!(a_.tower() == spec_.tower) || a_.level() == Level::top || a_.rows() != spec_.delta ||
      a_.cols() != spec_.r) {
    throw PreconditionError("local matrix must be delta x r over F_q of the code's tower");
  }
  if (d_.size() != spec_.n) throw PreconditionError("need one global block per group");
  for (const auto& di : d_) {
    if (!(di.tower() == spec_.tower) || di.level() != Level::top || di.rows() != spec_.h ||
        di.cols() != spec_.r) {
      throw PreconditionError("global blocks must be h x r over the top field");
    }
  }
  h_ = assemble(spec_, a_, d_);
}

std::vector<std::size_t> ErasurePattern::positions() const {
  std::vector<std::size_t> out;
  for (const auto& g : per_group) out.insert(out.end(), g.begin(), g.end());
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  return out;
}

FieldMatrix moore_matrix(const FieldTower& tower, std::span<const std::uint32_t> alphas,
                         std::size_t h) {
  if (h == 0) throw PreconditionError("Moore matrix needs h >= 1");
  const Field top = tower.field(Level::top);
  FieldMatrix m(tower, Level::top, h, alphas.size());
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (!top.contains(alphas[j])) throw PreconditionError("Moore matrix entry out of range");
    std::uint32_t x = alphas[j];
    for (std::size_t i = 0; i < h; ++i) {
      m.set(i, j, x);
      x = top.pow(x, tower.q());
    }
  }
  return m;
}

std::uint32_t moore_det(const FieldTower& tower, std::span<const std::uint32_t> alphas) {
  const std::size_t h = alphas.size();
  if (h == 0) throw PreconditionError("Moore determinant needs at least one element");
  const Field top = tower.field(Level::top);
  const std::uint32_t q = tower.q();
  std::uint32_t product = 1;
  std::vector<std::uint32_t> c;
  for (std::size_t i = 0; i < h; ++i) {
    // Direction vectors whose last nonzero entry is the 1 at position i.
    c.assign(i, 0);
    while (true) {
      std::uint32_t sum = alphas[i];
      for (std::size_t j = 0; j < i; ++j) sum = top.add(sum, top.mul(c[j], alphas[j]));
      product = top.mul(product, sum);
      std::size_t pos = 0;
      while (pos < i && ++c[pos] == q) c[pos++] = 0;
      if (pos == i) break;
    }
  }
  const std::uint32_t det = determinant(moore_matrix(tower, alphas, h));
  if (det != product) throw InternalError("Moore determinant formula disagrees with elimination");
  return product;
}

bool is_moore(const FieldMatrix& m) {
  if (m.level() != Level::top) return false;
  const Field top = m.field();
  const std::uint32_t q = m.tower().q();
  for (std::size_t i = 1; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != top.pow(m(i - 1, j), q)) return false;
    }
  }
  return true;
}

FieldMatrix local_mds_matrix(const FieldTower& tower, std::size_t r, std::size_t delta) {
  if (r < 2 || delta < 1 || delta >= r) throw PreconditionError("local code needs 1 <= delta <= r-1");
  if (r <= std::size_t{tower.q()} + 1) return rs_parity_check(tower, Level::mid, r, delta);
  FieldMatrix a(tower, Level::mid, delta, r);
  if (delta == 1) {
    for (std::size_t j = 0; j < r; ++j) a.set(0, j, 1);
    return a;
  }
  if (delta == r - 1) {
    const std::uint32_t minus_one = tower.field(Level::mid).neg(1);
    for (std::size_t i = 0; i < delta; ++i) {
      a.set(i, i, 1);
      a.set(i, r - 1, minus_one);
    }
    return a;
  }
  throw PreconditionError("local MDS code needs r <= q+1 unless delta is 1 or r-1");
}

namespace {

void check_system(const MrCodeSpec& spec, const SubspaceSystem& s) {
  spec.validate();
  if (!s.certified()) throw PreconditionError("MR construction needs a certified subspace system");
  if (s.n() != spec.n || s.h() != spec.h) {
    throw PreconditionError("subspace system (n, h) does not match the code parameters");
  }
  if (!(s.tower() == spec.tower)) throw PreconditionError("subspace system tower does not match the code tower");
}

}  // namespace

MrParityCheck build_direct(const MrCodeSpec& spec, const SubspaceSystem& s) {
  check_system(spec, s);
  if (s.r() != spec.r) throw PreconditionError("subspace dimension must equal the locality r");
  auto a = local_mds_matrix(spec.tower, spec.r, spec.delta);
  std::vector<FieldMatrix> d;
  std::vector<std::uint32_t> alphas(spec.r);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < spec.r; ++j) alphas[j] = s.element(i, j);
    d.push_back(moore_matrix(spec.tower, alphas, spec.h));
  }
  return MrParityCheck(spec, std::move(a), std::move(d));
}

MrParityCheck build_concatenated(const MrCodeSpec& spec, const SubspaceSystem& s,
                                 const FieldMatrix& inner_in) {
  check_system(spec, s);
  if (inner_in.level() == Level::top) throw PreconditionError("inner parity check must be over F_q");
  const auto inner = inner_in.rehome(spec.tower);
  if (inner.rows() != s.r() || inner.cols() != spec.r) {
    throw PreconditionError("inner parity check must be s x r with s the subspace dimension");
  }
  const std::size_t need = spec.h + spec.delta;
  if (need > inner.rows() || !every_column_subset_independent(inner, need)) {
    throw PreconditionError("inner code needs distance >= h + delta + 1");
  }
  auto a = local_mds_matrix(spec.tower, spec.r, spec.delta);
  const Field top = spec.tower.field(Level::top);
  std::vector<FieldMatrix> d;
  std::vector<std::uint32_t> betas(spec.r);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < spec.r; ++j) {
      std::uint32_t beta = 0;
      for (std::size_t t = 0; t < s.r(); ++t) beta = top.add(beta, top.mul(inner(t, j), s.element(i, t)));
      betas[j] = beta;
    }
    d.push_back(moore_matrix(spec.tower, betas, spec.h));
  }
  return MrParityCheck(spec, std::move(a), std::move(d));
}

PatternSpace::PatternSpace(const MrCodeSpec& spec)
    : n_(spec.n), r_(spec.r), h_(spec.h), delta_(spec.delta) {
  spec.validate();
  local_choices_ = 1;
  const auto per = binomial(r_, delta_);
  for (std::size_t g = 0; g < n_; ++g) local_choices_ = saturating_mul(local_choices_, per);
  extra_choices_ = binomial(n_ * (r_ - delta_), h_);
  total_ = saturating_mul(local_choices_, extra_choices_);
}

ErasurePattern PatternSpace::at(std::uint64_t index) const {
  if (index >= total_) throw PreconditionError("pattern index out of range");
  ErasurePattern p;
  p.per_group.resize(n_);
  std::uint64_t local = index / extra_choices_;
  const std::uint64_t extra_rank = index % extra_choices_;
  const auto per = binomial(r_, delta_);
  std::vector<bool> used(n_ * r_, false);
  for (std::size_t g = n_; g-- > 0;) {
    auto sub = unrank_combination(r_, delta_, local % per);
    local /= per;
    for (auto& x : sub) {
      x += g * r_;
      used[x] = true;
    }
    p.per_group[g] = std::move(sub);
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n_ * r_; ++i) {
    if (!used[i]) rest.push_back(i);
  }
  for (auto k : unrank_combination(rest.size(), h_, extra_rank)) p.extra.push_back(rest[k]);
  return p;
}

void PatternSpace::positions(std::uint64_t index, std::vector<std::size_t>& out) const {
  out = at(index).positions();
}

std::vector<ErasurePattern> enumerate_patterns(const MrCodeSpec& spec, const Budget& budget) {
  const PatternSpace space(spec);
  if (space.size() > budget.subsets) throw BudgetExceeded("pattern enumeration exceeds the budget");
  std::vector<ErasurePattern> out;
  out.reserve(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
  return out;
}

namespace {

class PatternChecker {
 public:
  PatternChecker(const MrParityCheck& p, const PatternSpace& space)
      : h_(p.matrix()), space_(space), f_(h_.field()) {}

  bool operator()(std::uint64_t index) {
    space_.positions(index, pos_);
    const std::size_t rows = h_.rows(), k = pos_.size();
    buf_.resize(rows * k);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < k; ++c) buf_[r * k + c] = h_(r, pos_[c]);
    }
    return rank_inplace(f_, buf_, rows, k) == k;
  }

 private:
  const FieldMatrix& h_;
  const PatternSpace& space_;
  Field f_;
  std::vector<std::size_t> pos_;
  std::vector<std::uint32_t> buf_;
};

}  // namespace

MrReport verify_mr(const MrParityCheck& p, const Budget& budget) {
  MrReport report;
  report.local_mds = is_mds_parity_check(p.local(), p.spec().delta);
  if (!report.local_mds) return report;
  const PatternSpace space(p.spec());
  if (space.size() > budget.subsets) {
    throw BudgetExceeded("MR verification needs " + std::to_string(space.size()) +
                         " patterns, over the budget of " + std::to_string(budget.subsets));
  }
  const auto fail = detail::find_first_failure(space.size(), worker_count(),
                                               [&] { return PatternChecker(p, space); });
  if (fail) {
    report.patterns_checked = *fail + 1;
    report.first_failure = space.at(*fail);
  } else {
    report.patterns_checked = space.size();
    report.ok = true;
  }
  return report;
}

MrReport verify_mr_sampled(const MrParityCheck& p, std::uint64_t samples, std::uint64_t seed) {
  MrReport report;
  report.sampled = samples;
  report.local_mds = is_mds_parity_check(p.local(), p.spec().delta);
  if (!report.local_mds) return report;
  const PatternSpace space(p.spec());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, space.size() - 1);
  std::vector<std::uint64_t> indices(samples);
  for (auto& x : indices) x = pick(rng);
  const auto fail = detail::find_first_failure(samples, worker_count(), [&] {
    return [checker = PatternChecker(p, space), &indices](std::uint64_t i) mutable {
      return checker(indices[i]);
    };
  });
  if (fail) {
    report.patterns_checked = *fail + 1;
    report.first_failure = space.at(indices[*fail]);
  } else {
    report.patterns_checked = samples;
    report.ok = true;
  }
  return report;
}

FieldMatrix generator_from_parity(const MrParityCheck& p) {
  auto g = kernel(p.matrix());
  if (static_cast<std::int64_t>(g.rows()) != p.spec().dimension()) {
    throw InternalError("parity-check matrix is rank deficient");
  }
  return g;
}

std::vector<std::uint32_t> encode(const FieldMatrix& g, std::span<const std::uint32_t> msg) {
  if (msg.size() != g.rows()) throw PreconditionError("message length does not match the code dimension");
  for (auto x : msg) {
    if (!g.field().contains(x)) throw PreconditionError("message symbol out of range");
  }
  return g.left_multiply(msg);
}

namespace {

// Solves for the erased columns `cols` of `m` given the other symbols of
// `word`; fills `word` on success.
enum class Fill { done, dependent, inconsistent };

Fill fill_columns(const FieldMatrix& m, std::span<const std::size_t> cols,
                  const std::vector<bool>& erased, std::vector<std::uint32_t>& word,
                  std::size_t col_offset) {
  const Field f = m.field();
  std::vector<std::uint32_t> rhs(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint32_t acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!erased[col_offset + c]) acc = f.add(acc, f.mul(m(r, c), word[col_offset + c]));
    }
    rhs[r] = f.neg(acc);
  }
  if (cols.empty()) {
    return std::all_of(rhs.begin(), rhs.end(), [](auto x) { return x == 0; }) ? Fill::done
                                                                               : Fill::inconsistent;
  }
  std::vector<std::size_t> local(cols.begin(), cols.end());
  for (auto& c : local) c -= col_offset;
  const auto sub = m.select_columns(local);
  if (rank(sub) != local.size()) return Fill::dependent;
  const auto x = solve(sub, rhs);
  if (!x) return Fill::inconsistent;
  for (std::size_t i = 0; i < cols.size(); ++i) word[cols[i]] = (*x)[i];
  return Fill::done;
}

}  // namespace

DecodeResult erase_decode(const MrParityCheck& p, std::span<const std::uint32_t> received,
                          std::span<const std::size_t> erased_in) {
  const auto& spec = p.spec();
  const std::size_t len = spec.length();
  if (received.size() != len) throw PreconditionError("received word has the wrong length");
  const Field top = spec.tower.field(Level::top);
  std::vector<bool> erased(len, false);
  for (auto e : erased_in) {
    if (e >= len) throw PreconditionError("erasure position out of range");
    if (erased[e]) throw PreconditionError("erasure position listed twice");
    erased[e] = true;
  }
  DecodeResult result;
  result.codeword.assign(received.begin(), received.end());
  auto& word = result.codeword;
  for (std::size_t i = 0; i < len; ++i) {
    if (erased[i]) {
      word[i] = 0;
    } else if (!top.contains(word[i])) {
      throw PreconditionError("received symbol out of range");
    }
  }

  const auto a = p.local().lift(Level::top);
  for (std::size_t g = 0; g < spec.n; ++g) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < spec.r; ++j) {
      if (erased[g * spec.r + j]) cols.push_back(g * spec.r + j);
    }
    if (cols.empty() || cols.size() > spec.delta) continue;
    const auto outcome = fill_columns(a, cols, erased, word, g * spec.r);
    if (outcome == Fill::inconsistent) {
      result.status = DecodeStatus::inconsistent;
      return result;
    }
    if (outcome == Fill::done) {
      for (auto c : cols) erased[c] = false;
    }
  }

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < len; ++i) {
    if (erased[i]) rest.push_back(i);
  }
  const auto& h = p.matrix();
  const auto outcome = fill_columns(h, rest, erased, word, 0);
  if (outcome == Fill::inconsistent) {
    result.status = DecodeStatus::inconsistent;
    return result;
  }
  if (outcome == Fill::dependent) {
    const auto ker = kernel(h.select_columns(rest));
    result.certificate.assign(len, 0);
    for (std::size_t i = 0; i < rest.size(); ++i) result.certificate[rest[i]] = ker(0, i);
    result.status = DecodeStatus::undecodable;
    return result;
  }
  const auto syndrome = h.multiply(word);
  if (!std::all_of(syndrome.begin(), syndrome.end(), [](auto x) { return x == 0; })) {
    result.status = DecodeStatus::inconsistent;
    return result;
  }
  result.status = DecodeStatus::recovered;
  return result;
}

void write_mr(std::ostream& out, const MrParityCheck& p) {
  const auto& s = p.spec();
  out << "%MRLRC-MR v1\n" << s.tower.to_string() << "\n";
  out << "n=" << s.n << " r=" << s.r << " h=" << s.h << " delta=" << s.delta << "\n";
  write_matrix(out, p.local());
  for (const auto& d : p.global()) write_matrix(out, d);
}

MrParityCheck read_mr(std::istream& in) {
  textio::expect_line(in, "%MRLRC-MR v1");
  const auto tower = FieldTower::parse(textio::read_line(in, "tower line"));
  const auto kv = textio::parse_key_values(textio::read_line(in, "code parameter line"));
  MrCodeSpec spec{textio::require_u64(kv, "n"), textio::require_u64(kv, "r"),
                  textio::require_u64(kv, "h"), textio::require_u64(kv, "delta"), tower};
  if (kv.size() != 4) throw FormatError("unexpected keys in code parameter line");
  try {
    spec.validate();
    auto a = read_matrix(in);
    if (a.level() == Level::prime) a = a.lift(Level::mid);
    std::vector<FieldMatrix> d;
    for (std::size_t i = 0; i < spec.n; ++i) d.push_back(read_matrix(in));
    return MrParityCheck(std::move(spec), std::move(a), std::move(d));
  } catch (const PreconditionError& e) {
    throw FormatError(e.what());
  }
}

void write_vector(std::ostream& out, std::span<const std::uint32_t> v) {
  for (auto x : v) out << x << '\n';
}

std::vector<std::uint32_t> read_vector(std::istream& in, std::uint32_t field_size) {
  std::vector<std::uint32_t> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = textio::split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) throw FormatError("vector files hold one code per line");
    const auto x = textio::parse_u32(tokens[0]);
    if (x >= field_size) throw FormatError("vector entry out of range for the field");
    out.push_back(x);
  }
  return out;
}

}  // namespace mrlrc
