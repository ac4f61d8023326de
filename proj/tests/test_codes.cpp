#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "mrlrc/codes.hpp"
#include "mrlrc/errors.hpp"

using namespace mrlrc;

namespace {

// Oracle: all codewords of the code with parity check h over a prime or small
// field, by brute force over F^n.
std::vector<std::vector<std::uint32_t>> oracle_codewords(const FieldMatrix& h) {
  const std::uint32_t q = h.tower().size(h.level());
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> v(h.cols(), 0);
  while (true) {
    const auto s = h.multiply(v);
    if (std::all_of(s.begin(), s.end(), [](auto x) { return x == 0; })) out.push_back(v);
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == q) v[i++] = 0;
    if (i == v.size()) break;
  }
  return out;
}

std::size_t oracle_block_distance(const std::vector<std::vector<std::uint32_t>>& words, std::size_t r) {
  std::size_t best = words.empty() ? 0 : words[0].size() / r + 1;
  for (const auto& w : words) {
    const auto bw = block_weight(w, r);
    if (bw > 0) best = std::min(best, bw);
  }
  return best;
}

std::size_t hamming(const std::vector<std::uint32_t>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto x) { return x != 0; }));
}

}  // namespace

TEST_CASE("rs_parity_check examples") {
  const auto f5 = FieldTower::make(5, 1, 1);
  const auto h = rs_parity_check(f5, Level::top, 4, 2);
  CHECK(h == FieldMatrix(f5, Level::top, 2, 4, {1, 1, 1, 1, 0, 1, 2, 3}));
  CHECK(is_mds_parity_check(h, 2));

  const auto f2 = FieldTower::make(2, 1, 1);
  const auto ext = rs_parity_check(f2, Level::top, 3, 2);
  CHECK(ext == FieldMatrix(f2, Level::top, 2, 3, {1, 1, 0, 0, 1, 1}));
  CHECK(is_mds_parity_check(ext, 2));

  const auto f4 = FieldTower::make(2, 2, 1);
  for (std::size_t r = 2; r <= 5; ++r) {
    const auto one = rs_parity_check(f4, Level::mid, r, 1);
    CHECK(std::all_of(one.entries().begin(), one.entries().end(), [](auto x) { return x == 1; }));
  }
  CHECK_THROWS_AS(rs_parity_check(f4, Level::mid, 6, 2), PreconditionError);
  CHECK_THROWS_AS(rs_parity_check(f4, Level::mid, 4, 4), PreconditionError);
  CHECK_THROWS_AS(rs_parity_check(f4, Level::mid, 4, 0), PreconditionError);
}

TEST_CASE("every rs_parity_check output is MDS") {
  for (const auto& [p, a, m] : std::vector<std::array<std::uint32_t, 3>>{{2, 1, 1}, {3, 1, 1}, {2, 2, 1}, {2, 1, 3}, {5, 1, 1}, {3, 1, 2}}) {
    const auto t = FieldTower::make(p, a, m);
    const std::size_t size = t.size(Level::top);
    for (std::size_t r = 2; r <= size + 1; ++r) {
      for (std::size_t d = 1; d < r; ++d) REQUIRE(is_mds_parity_check(rs_parity_check(t, Level::top, r, d), d));
    }
  }
}

TEST_CASE("BCH codes reach their designed distance") {
  auto h15_1 = bch_parity_check(4, 1);
  auto c = LinearCode::from_parity_check(h15_1);
  CHECK(c.length() == 15);
  CHECK(c.dimension() == 11);
  CHECK(min_distance(c) == 3);

  auto h15_2 = bch_parity_check(4, 2);
  c = LinearCode::from_parity_check(h15_2);
  CHECK(c.length() == 15);
  CHECK(c.dimension() == 7);
  CHECK(min_distance(c) == 5);
  CHECK(h15_2.rows() == 8);

  const auto h7 = bch_parity_check(3, 1);
  c = LinearCode::from_parity_check(h7);
  CHECK(c.dimension() == 4);
  const auto words = oracle_codewords(h7);
  CHECK(words.size() == 16);
  CHECK(oracle_block_distance(words, 1) == 3);

  CHECK_THROWS_AS(bch_parity_check(3, 3), PreconditionError);
  CHECK_THROWS_AS(bch_parity_check(4, 0), PreconditionError);
}

TEST_CASE("subfield_subcode keeps exactly the F_q-rational codewords") {
  // [5,3,3] Reed-Solomon over F_4 = F_2(y).
  const auto t = FieldTower::make(2, 1, 2);
  const auto h = rs_parity_check(t, Level::top, 5, 2);
  const auto sub = subfield_subcode(h);
  CHECK(sub.level() == Level::mid);
  const auto parent = oracle_codewords(h);
  std::set<std::vector<std::uint32_t>> rational;
  for (const auto& w : parent) {
    if (std::all_of(w.begin(), w.end(), [](auto x) { return x < 2; })) rational.insert(w);
  }
  const auto mine = oracle_codewords(sub);
  CHECK(std::set<std::vector<std::uint32_t>>(mine.begin(), mine.end()) == rational);
  const auto code = LinearCode::from_parity_check(sub);
  CHECK(code.dimension() >= 1);
  CHECK(min_distance(code) >= 3);

  // u = 1 keeps the row space.
  const auto f3 = FieldTower::make(3, 1, 1);
  const auto h3 = rs_parity_check(f3, Level::top, 4, 2);
  CHECK(subfield_subcode(h3).entries() == row_basis(h3).entries());
  // Zero parity rows give the full space.
  const FieldMatrix none(t, Level::top, 0, 4);
  CHECK(subfield_subcode(none).rows() == 0);
}

TEST_CASE("pi_expand maps Hamming distance to block distance") {
  // Repetition [2,1,2] over F_4.
  const auto t = FieldTower::make(2, 1, 2);
  const auto rep = LinearCode::from_generator(FieldMatrix(t, Level::top, 1, 2, {1, 1}));
  const auto block = pi_expand(rep);
  CHECK(block.block_size == 2);
  CHECK(block.blocks() == 2);
  CHECK(block.code.dimension() == 2);
  CHECK(block_min_distance(block) == 2);

  // [4,2,3] MDS over F_8 expands to [(4,3),6,3].
  const auto t8 = FieldTower::make(2, 1, 3);
  const auto mds = LinearCode::from_parity_check(rs_parity_check(t8, Level::top, 4, 2));
  const auto b8 = pi_expand(mds);
  CHECK(b8.code.dimension() == 6);
  CHECK(block_min_distance(b8) == 3);

  // Cardinality and distance are preserved codeword by codeword.
  const auto parent = oracle_codewords(rep.parity_check());
  const auto expanded = oracle_codewords(block.code.parity_check());
  CHECK(parent.size() == expanded.size());
  for (const auto& w : expanded) {
    std::vector<std::uint32_t> symbols;
    for (std::size_t b = 0; b < 2; ++b) symbols.push_back(t.from_coordinates(&w[2 * b]));
    CHECK(std::find(parent.begin(), parent.end(), symbols) != parent.end());
    CHECK(block_weight(w, 2) == hamming(symbols));
  }

  const auto zero = LinearCode::from_generator(FieldMatrix(t, Level::top, 0, 3));
  const auto bz = pi_expand(zero);
  CHECK(bz.code.dimension() == 0);
  CHECK(block_min_distance(bz) == 4);
}

TEST_CASE("block_weight examples") {
  CHECK(block_weight(std::vector<std::uint32_t>(6, 0), 2) == 0);
  CHECK(block_weight(std::vector<std::uint32_t>{0, 0, 1, 0, 0, 0}, 2) == 1);
  CHECK(block_weight(std::vector<std::uint32_t>(12, 1), 3) == 4);
  CHECK_THROWS_AS(block_weight(std::vector<std::uint32_t>(5, 0), 2), PreconditionError);
}

TEST_CASE("block weight is the Hamming weight of the symbol image") {
  const auto t = FieldTower::make(2, 1, 2);
  for (std::uint32_t code = 0; code < 256; ++code) {
    std::vector<std::uint32_t> v(8);
    for (int i = 0; i < 8; ++i) v[i] = (code >> i) & 1;
    std::vector<std::uint32_t> symbols;
    for (int b = 0; b < 4; ++b) symbols.push_back(t.from_coordinates(&v[2 * b]));
    REQUIRE(block_weight(v, 2) == hamming(symbols));
  }
}

TEST_CASE("block distance satisfies the triangle inequality") {
  // Exhaustive over all triples in F_2^8; block weights are tabulated once.
  for (std::size_t r : {1u, 2u, 4u, 8u}) {
    std::vector<std::size_t> weight(256);
    for (std::uint32_t c = 0; c < 256; ++c) {
      std::vector<std::uint32_t> v(8);
      for (int i = 0; i < 8; ++i) v[i] = (c >> i) & 1;
      weight[c] = block_weight(v, r);
    }
    bool ok = true;
    for (std::uint32_t x = 0; x < 256; ++x) {
      for (std::uint32_t y = 0; y < 256; ++y) {
        ok &= weight[x ^ y] == weight[y ^ x];
        ok &= (weight[x ^ y] == 0) == (x == y);
        for (std::uint32_t z = 0; z < 256; ++z) ok &= weight[x ^ z] <= weight[x ^ y] + weight[y ^ z];
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("block_min_distance examples and the support-search fallback") {
  const auto f2 = FieldTower::make(2, 1, 1);
  const auto full = LinearCode::from_generator(FieldMatrix::identity(f2, Level::mid, 6));
  CHECK(block_min_distance(BlockCode(full, 2)) == 1);
  const auto zero = LinearCode::from_parity_check(FieldMatrix::identity(f2, Level::mid, 6));
  CHECK(block_min_distance(BlockCode(zero, 3)) == 3);

  // Compare the enumeration and the support search on random codes.
  const auto t = FieldTower::make(3, 1, 1);
  std::mt19937 rng(4);
  Budget tiny;
  tiny.codebook = 1;
  for (int i = 0; i < 60; ++i) {
    std::vector<std::uint32_t> e(3 * 8);
    for (auto& x : e) x = rng() % 3;
    const auto code = LinearCode::from_parity_check(FieldMatrix(t, Level::mid, 3, 8, e));
    const BlockCode b(code, 2);
    const auto expect = oracle_block_distance(oracle_codewords(code.parity_check()), 2);
    REQUIRE(block_min_distance(b) == expect);
    REQUIRE(block_min_distance(b, tiny) == expect);
  }
}

TEST_CASE("code files round trip") {
  const auto t = FieldTower::make(2, 1, 3);
  const auto b = pi_expand(LinearCode::from_parity_check(rs_parity_check(t, Level::top, 5, 2)));
  std::stringstream ss;
  write_code(ss, b);
  CHECK(ss.str().rfind("%code n=5 k=9 r_block=3\n", 0) == 0);
  const auto back = read_code(ss);
  CHECK(back.block_size == 3);
  CHECK(back.code.parity_check() == b.code.parity_check());
  CHECK(back.code.generator() == b.code.generator());
  std::stringstream bad("%code n=5 k=8 r_block=3\n" + ss.str().substr(ss.str().find('\n') + 1));
  CHECK_THROWS_AS(read_code(bad), FormatError);
}
