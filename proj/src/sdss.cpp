#include "mrlrc/sdss.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "mrlrc/combinatorics.hpp"
#include "mrlrc/errors.hpp"
#include "parallel.hpp"
#include "textio.hpp"

namespace mrlrc {

SubspaceSystem::SubspaceSystem(FieldTower tower, std::size_t n, std::size_t r, std::size_t h,
                               std::vector<std::uint32_t> vectors)
    : tower_(std::move(tower)), n_(n), r_(r), h_(h), vectors_(std::move(vectors)) {
  if (n == 0 || r == 0) throw PreconditionError("subspace system needs n >= 1 and r >= 1");
  if (h == 0 || h > n) throw PreconditionError("subspace system needs 1 <= h <= n");
  if (vectors_.size() != n * r * tower_.m()) {
    throw PreconditionError("subspace system vector data does not match n * r * m");
  }
  for (auto c : vectors_) {
    if (c >= tower_.q()) throw PreconditionError("subspace coordinate is not an F_q code");
  }
}

std::span<const std::uint32_t> SubspaceSystem::vector(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= r_) throw PreconditionError("subspace vector index out of range");
  return {vectors_.data() + (i * r_ + j) * m(), m()};
}

std::uint32_t SubspaceSystem::element(std::size_t i, std::size_t j) const {
  return tower_.from_coordinates(vector(i, j).data());
}

FieldMatrix SubspaceSystem::basis_matrix() const {
  const std::size_t cols = n_ * r_;
  std::vector<std::uint32_t> e(m() * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t t = 0; t < m(); ++t) e[t * cols + c] = vectors_[c * m() + t];
  }
  return FieldMatrix(tower_, Level::mid, m(), cols, std::move(e));
}

DirectSumReport SubspaceSystem::certify(const Budget& budget) {
  auto report = verify_direct_sum(*this, budget);
  certified_ = report.ok;
  return report;
}

namespace {

// Rank of the chosen groups' vectors, stacked as rows (m columns).
std::size_t groups_rank(const SubspaceSystem& s, std::span<const std::size_t> groups,
                        std::vector<std::uint32_t>& buf) {
  const std::size_t m = s.m(), r = s.r();
  buf.resize(groups.size() * r * m);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto* src = s.vectors().data() + groups[g] * r * m;
    std::copy(src, src + r * m, buf.begin() + g * r * m);
  }
  return rank_inplace(s.tower().field(Level::mid), buf, groups.size() * r, m);
}

std::optional<std::size_t> degenerate_group(const SubspaceSystem& s) {
  std::vector<std::uint32_t> buf;
  for (std::size_t i = 0; i < s.n(); ++i) {
    const std::size_t one[] = {i};
    if (groups_rank(s, one, buf) != s.r()) return i;
  }
  return std::nullopt;
}

}  // namespace

DirectSumReport verify_direct_sum(const SubspaceSystem& s, const Budget& budget) {
  const std::uint64_t total = binomial(s.n(), s.h());
  if (total > budget.subsets) {
    throw BudgetExceeded("direct-sum verification needs " + std::to_string(total) +
                         " subsets, over the budget of " + std::to_string(budget.subsets));
  }
  DirectSumReport report;
  report.degenerate_group = degenerate_group(s);
  if (report.degenerate_group) return report;
  const std::size_t target = s.h() * s.r();
  const auto fail = detail::find_first_failure(total, worker_count(), [&] {
    return [&s, target, buf = std::vector<std::uint32_t>()](std::uint64_t i) mutable {
      const auto subset = unrank_combination(s.n(), s.h(), i);
      return groups_rank(s, subset, buf) == target;
    };
  });
  if (fail) {
    report.subsets_checked = *fail + 1;
    report.failing_subset = unrank_combination(s.n(), s.h(), *fail);
  } else {
    report.subsets_checked = total;
    report.ok = true;
  }
  return report;
}

DirectSumReport verify_direct_sum_sampled(const SubspaceSystem& s, std::uint64_t samples,
                                          std::uint64_t seed) {
  DirectSumReport report;
  report.sampled = true;
  report.degenerate_group = degenerate_group(s);
  if (report.degenerate_group) return report;
  const std::uint64_t total = binomial(s.n(), s.h());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
  std::vector<std::uint64_t> ranks(samples);
  for (auto& x : ranks) x = pick(rng);
  const std::size_t target = s.h() * s.r();
  const auto fail = detail::find_first_failure(samples, worker_count(), [&] {
    return [&s, &ranks, target, buf = std::vector<std::uint32_t>()](std::uint64_t i) mutable {
      const auto subset = unrank_combination(s.n(), s.h(), ranks[i]);
      return groups_rank(s, subset, buf) == target;
    };
  });
  if (fail) {
    report.subsets_checked = *fail + 1;
    report.failing_subset = unrank_combination(s.n(), s.h(), ranks[*fail]);
  } else {
    report.subsets_checked = samples;
    report.ok = true;
  }
  return report;
}

SubspaceSystem gv_greedy(const FieldTower& tower, std::size_t n, std::size_t r, std::size_t h) {
  if (h == 0 || h > n || r == 0) throw PreconditionError("greedy construction needs 1 <= h <= n and r >= 1");
  const auto b = bounds(tower.q(), n, r, h);
  const std::size_t m = tower.m();
  if (m < b.gv_m) {
    throw PreconditionError("greedy construction needs m >= " + std::to_string(b.gv_m) +
                            " (Gilbert-Varshamov count), got m = " + std::to_string(m));
  }
  const Field fq = tower.field(Level::mid);
  std::vector<std::uint32_t> vectors(n * r * m, 0);
  for (std::size_t k = 0; k < h * r; ++k) vectors[k * m + k] = 1;

  std::vector<std::uint32_t> cand(m);
  for (std::size_t i = h; i < n; ++i) {
    std::vector<ReducedBasis> spans;
    std::vector<std::size_t> subset(h - 1);
    for (std::size_t t = 0; t + 1 < h; ++t) subset[t] = t;
    do {
      ReducedBasis basis(fq, m);
      for (auto g : subset) {
        for (std::size_t j = 0; j < r; ++j) basis.insert({vectors.data() + (g * r + j) * m, m});
      }
      spans.push_back(std::move(basis));
    } while (h > 1 && next_combination(subset, i));

    for (std::size_t j = 0; j < r; ++j) {
      bool placed = false;
      for (std::uint32_t code = 1; code < tower.size(Level::top) && !placed; ++code) {
        tower.coordinates(code, cand.data());
        bool excluded = false;
        for (const auto& s : spans) {
          if (s.contains(cand)) {
            excluded = true;
            break;
          }
        }
        if (excluded) continue;
        for (auto& s : spans) s.insert(cand);
        std::copy(cand.begin(), cand.end(), vectors.begin() + (i * r + j) * m);
        placed = true;
      }
      if (!placed) throw InternalError("greedy scan exhausted F_q^m despite the counting bound");
    }
  }
  SubspaceSystem s(tower, n, r, h, std::move(vectors));
  if (!s.certify(Budget::from_env()).ok) throw InternalError("greedy system failed verification");
  return s;
}

SubspaceSystem mds_construct(BaseField base, std::size_t n, std::size_t r, std::size_t h) {
  if (h == 0 || h > n) throw PreconditionError("MDS-based system needs 1 <= h <= n");
  const auto code_tower = FieldTower::make(base.p, base.a, static_cast<std::uint32_t>(r));
  if (n > std::uint64_t{code_tower.size(Level::top)} + 1) {
    throw PreconditionError("MDS-based system needs n <= q^r + 1; got n = " + std::to_string(n));
  }
  const auto tower = FieldTower::make(base.p, base.a, static_cast<std::uint32_t>(h * r));
  // h = n uses the zero code, whose parity check is the identity.
  const auto parity = h == n ? FieldMatrix::identity(code_tower, Level::top, n)
                             : rs_parity_check(code_tower, Level::top, n, h);
  const Field top = code_tower.field(Level::top);
  const auto basis = code_tower.fq_basis();
  const std::size_t m = h * r;
  std::vector<std::uint32_t> vectors(n * r * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < r; ++t) {
      auto* out = vectors.data() + (i * r + t) * m;
      for (std::size_t j = 0; j < h; ++j) {
        code_tower.coordinates(top.mul(basis[t].code, parity(j, i)), out + j * r);
      }
    }
  }
  SubspaceSystem s(tower, n, r, h, std::move(vectors));
  if (!s.certify(Budget::from_env()).ok) throw InternalError("MDS-based system failed verification");
  return s;
}

SubspaceSystem subfield_construct(BaseField base, std::size_t u, std::size_t r, std::size_t h,
                                  const Budget& budget) {
  if (u == 0 || r == 0) throw PreconditionError("subfield-subcode system needs u >= 1 and r >= 1");
  const auto big = FieldTower::make(base.p, base.a, static_cast<std::uint32_t>(u * r));
  const std::size_t n = std::size_t{big.size(Level::top)} + 1;
  if (h < 1 || h >= n) throw PreconditionError("subfield-subcode system needs 1 <= h < n");
  const auto parity = rs_parity_check(big, Level::top, n, h);
  const Field top = big.field(Level::top);
  const std::size_t ur = u * r, cols = n * r;
  std::vector<std::uint32_t> rows(h * ur * cols);
  std::vector<std::uint32_t> coords(ur);
  std::uint32_t y_power = 1;
  for (std::size_t t = 0; t < r; ++t, y_power *= big.q()) {
    for (std::size_t j = 0; j < h; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        big.coordinates(top.mul(parity(j, i), y_power), coords.data());
        for (std::size_t s = 0; s < ur; ++s) rows[(j * ur + s) * cols + i * r + t] = coords[s];
      }
    }
  }
  const auto reduced = row_basis(FieldMatrix(big, Level::mid, h * ur, cols, std::move(rows)));
  const std::size_t m = reduced.rows();
  const auto tower = FieldTower::make(base.p, base.a, static_cast<std::uint32_t>(m));
  std::vector<std::uint32_t> vectors(cols * m);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t t = 0; t < m; ++t) vectors[c * m + t] = reduced(t, c);
  }
  SubspaceSystem s(tower, n, r, h, std::move(vectors));
  if (binomial(n, h) <= budget.subsets) {
    if (!s.certify(budget).ok) throw InternalError("subfield-subcode system failed verification");
  } else {
    const std::uint64_t samples = std::min<std::uint64_t>(budget.subsets, 100'000);
    if (!verify_direct_sum_sampled(s, samples, 0).ok) {
      throw InternalError("subfield-subcode system failed sampled verification");
    }
    s.set_sampled(samples);
  }
  return s;
}

BlockCode to_block_code(const SubspaceSystem& s) {
  if (!s.certified()) throw PreconditionError("block code conversion needs a certified system");
  return BlockCode(LinearCode::from_parity_check(s.basis_matrix()), s.r());
}

SubspaceSystem from_block_code(const BlockCode& code, std::size_t h, const Budget& budget) {
  const std::size_t n = code.blocks(), r = code.block_size;
  if (h == 0 || h > n) throw PreconditionError("system needs 1 <= h <= n");
  if (code.code.level() == Level::top) throw PreconditionError("block code must live over F_q");
  const std::size_t d = block_min_distance(code, budget);
  if (d < h + 1) {
    throw PreconditionError("block code distance " + std::to_string(d) + " is below h + 1 = " +
                            std::to_string(h + 1));
  }
  const auto& dual = code.code.parity_check();
  const std::size_t m = dual.rows();
  const std::uint32_t a = code.code.level() == Level::prime ? 1 : code.code.tower().a();
  const auto tower = FieldTower::make(code.code.tower().p(), a, static_cast<std::uint32_t>(m));
  std::vector<std::uint32_t> vectors(n * r * m);
  for (std::size_t c = 0; c < n * r; ++c) {
    for (std::size_t t = 0; t < m; ++t) vectors[c * m + t] = dual(t, c);
  }
  SubspaceSystem s(tower, n, r, h, std::move(vectors));
  if (!s.certify(budget).ok) throw InternalError("system from a block code failed verification");
  return s;
}

namespace {

using boost::multiprecision::cpp_int;

cpp_int binomial_big(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  cpp_int c = 1;
  for (std::uint64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

// Largest e with q^e <= x (x >= 1).
std::uint64_t floor_log(const cpp_int& x, std::uint64_t q) {
  std::uint64_t e = 0;
  cpp_int pw = q;
  while (pw <= x) {
    pw *= q;
    ++e;
  }
  return e;
}

// Smallest e with q^e >= x (x >= 1).
std::uint64_t ceil_log(const cpp_int& x, std::uint64_t q) {
  std::uint64_t e = 0;
  cpp_int pw = 1;
  while (pw < x) {
    pw *= q;
    ++e;
  }
  return e;
}

}  // namespace

BoundsReport bounds(std::uint64_t q, std::uint64_t n, std::uint64_t r, std::uint64_t h) {
  if (q < 2 || n == 0 || r == 0 || h == 0 || h > n) {
    throw PreconditionError("bounds need q >= 2, r >= 1 and 1 <= h <= n");
  }
  const cpp_int ball = cpp_int(boost::multiprecision::pow(cpp_int(q), static_cast<unsigned>(r))) - 1;
  cpp_int gv_sum = 0, power = 1;
  for (std::uint64_t i = 0; i < h; ++i, power *= ball) gv_sum += binomial_big(n - 1, i) * power;
  BoundsReport b;
  b.gv_m = r + floor_log(gv_sum, q);
  b.singleton_lower = h * r;
  if (h == 1) {
    b.hamming_lower = b.singleton_lower;
  } else {
    cpp_int ham_sum = 0;
    power = 1;
    for (std::uint64_t i = 0; i <= h / 2; ++i, power *= ball) ham_sum += binomial_big(n, i) * power;
    b.hamming_lower = ceil_log(ham_sum, q);
  }
  return b;
}

void write_sdss(std::ostream& out, const SubspaceSystem& s) {
  out << "%MRLRC-SDSS v1\n" << s.tower().to_string() << "\n";
  out << "n=" << s.n() << " r=" << s.r() << " h=" << s.h() << " m=" << s.m()
      << " certified=" << (s.certified() ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < s.n(); ++i) {
    for (std::size_t j = 0; j < s.r(); ++j) {
      const auto v = s.vector(i, j);
      for (std::size_t t = 0; t < v.size(); ++t) {
        if (t != 0) out << ' ';
        out << v[t];
      }
      out << '\n';
    }
  }
}

SubspaceSystem read_sdss(std::istream& in, const Budget& budget) {
  textio::expect_line(in, "%MRLRC-SDSS v1");
  const auto tower = FieldTower::parse(textio::read_line(in, "tower line"));
  const auto kv = textio::parse_key_values(textio::read_line(in, "system parameter line"));
  const auto n = textio::require_u64(kv, "n");
  const auto r = textio::require_u64(kv, "r");
  const auto h = textio::require_u64(kv, "h");
  const auto m = textio::require_u64(kv, "m");
  const auto certified = textio::require_u32(kv, "certified");
  if (kv.size() != 5) throw FormatError("unexpected keys in system parameter line");
  if (m != tower.m()) throw FormatError("m does not match the tower's extension degree");
  if (certified > 1) throw FormatError("certified must be 0 or 1");
  std::vector<std::uint32_t> vectors;
  vectors.reserve(n * r * m);
  for (std::uint64_t k = 0; k < n * r; ++k) {
    const auto tokens = textio::split_ws(textio::read_line(in, "subspace vector"));
    if (tokens.size() != m) throw FormatError("subspace vector has the wrong length");
    for (auto t : tokens) vectors.push_back(textio::parse_u32(t));
  }
  std::optional<SubspaceSystem> s;
  try {
    s.emplace(tower, n, r, h, std::move(vectors));
  } catch (const PreconditionError& e) {
    throw FormatError(e.what());
  }
  if (certified == 1 && !s->certify(budget).ok) {
    throw FormatError("system is marked certified but fails direct-sum verification");
  }
  return std::move(*s);
}

}  // namespace mrlrc
