#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "mrlrc/errors.hpp"
#include "mrlrc/linalg.hpp"

using namespace mrlrc;

namespace {

FieldMatrix mat(const FieldTower& t, Level lv, std::size_t r, std::size_t c,
                std::vector<std::uint32_t> e) {
  return FieldMatrix(t, lv, r, c, std::move(e));
}

FieldMatrix random_matrix(const FieldTower& t, Level lv, std::size_t r, std::size_t c, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, t.size(lv) - 1);
  std::vector<std::uint32_t> e(r * c);
  for (auto& x : e) x = pick(rng);
  return mat(t, lv, r, c, std::move(e));
}

// Oracle rank over a prime field: the number of distinct vectors in the row
// span is p^rank.
std::size_t oracle_rank_prime(const FieldMatrix& m) {
  const std::uint32_t p = m.tower().p();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) combos *= p;
  std::vector<std::vector<std::uint32_t>> seen;
  std::vector<std::uint32_t> coef(m.rows(), 0);
  for (std::size_t k = 0; k < combos; ++k) {
    std::size_t x = k;
    for (auto& c : coef) {
      c = x % p;
      x /= p;
    }
    auto v = m.left_multiply(coef);
    if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
  }
  std::size_t r = 0, size = 1;
  while (size < seen.size()) {
    size *= p;
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("rref examples") {
  const auto f2 = FieldTower::make(2, 1, 1);
  const auto id = FieldMatrix::identity(f2, Level::top, 4);
  auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.rank == 4);
  const FieldMatrix zero(f2, Level::top, 3, 2);
  r = rref(zero);
  CHECK(r.reduced == zero);
  CHECK(r.rank == 0);
  CHECK(r.pivots.empty());

  const auto f4 = FieldTower::make(2, 1, 2);
  const auto moore = mat(f4, Level::top, 2, 2, {2, 2, 3, 3});
  CHECK(rank(moore) == 1);
  CHECK(rref(moore).reduced == mat(f4, Level::top, 2, 2, {1, 1, 0, 0}));
}

TEST_CASE("rref is idempotent and rank matches the oracle over F_2 and F_3") {
  for (std::uint32_t p : {2u, 3u}) {
    const auto t = FieldTower::make(p, 1, 1);
    std::mt19937 rng(p);
    for (int i = 0; i < 400; ++i) {
      const auto rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      const auto m = random_matrix(t, Level::top, rows, cols, rng);
      const auto r = rref(m);
      REQUIRE(rref(r.reduced).reduced == r.reduced);
      REQUIRE(r.rank == oracle_rank_prime(m));
      REQUIRE(rank(m.transpose()) == r.rank);
    }
  }
}

TEST_CASE("rank equals rank of the transpose exhaustively for 2x3 over F_3") {
  const auto t = FieldTower::make(3, 1, 1);
  for (std::uint32_t code = 0; code < 729; ++code) {
    std::vector<std::uint32_t> e(6);
    std::uint32_t x = code;
    for (auto& v : e) {
      v = x % 3;
      x /= 3;
    }
    const auto m = mat(t, Level::top, 2, 3, e);
    REQUIRE(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("solve examples") {
  const auto f2 = FieldTower::make(2, 1, 1);
  const auto id = FieldMatrix::identity(f2, Level::top, 3);
  const std::vector<std::uint32_t> b{1, 0, 1};
  CHECK(solve(id, b) == b);
  CHECK(solve(mat(f2, Level::top, 1, 2, {1, 1}), std::vector<std::uint32_t>{1}) ==
        std::vector<std::uint32_t>{1, 0});
  CHECK_FALSE(solve(mat(f2, Level::top, 2, 2, {1, 0, 1, 0}), std::vector<std::uint32_t>{0, 1}));
  CHECK_THROWS_AS(solve(id, std::vector<std::uint32_t>{1}), PreconditionError);
}

TEST_CASE("kernel examples and rank-nullity") {
  const auto f2 = FieldTower::make(2, 1, 1);
  const auto k = kernel(mat(f2, Level::top, 1, 2, {1, 1}));
  CHECK(k == mat(f2, Level::top, 1, 2, {1, 1}));
  CHECK(kernel(FieldMatrix::identity(f2, Level::top, 3)).rows() == 0);

  const auto t = FieldTower::make(3, 2, 1);
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(t, Level::top, 1 + rng() % 4, 1 + rng() % 6, rng);
    const auto ker = kernel(m);
    REQUIRE(ker.rows() == m.cols() - rank(m));
    REQUIRE(rank(ker) == ker.rows());
    for (std::size_t r = 0; r < ker.rows(); ++r) {
      const auto prod = m.multiply(ker.row(r));
      REQUIRE(std::all_of(prod.begin(), prod.end(), [](auto x) { return x == 0; }));
    }
  }
}

TEST_CASE("every solution x0 + kernel combination satisfies the system") {
  const auto t = FieldTower::make(2, 2, 1);
  const Field f = t.field(Level::top);
  std::mt19937 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(t, Level::top, 1 + rng() % 3, 1 + rng() % 5, rng);
    std::vector<std::uint32_t> x(m.cols());
    for (auto& v : x) v = rng() % 4;
    const auto b = m.multiply(x);
    const auto x0 = solve(m, b);
    REQUIRE(x0);
    const auto ker = kernel(m);
    for (int s = 0; s < 10; ++s) {
      auto y = *x0;
      for (std::size_t r = 0; r < ker.rows(); ++r) {
        const std::uint32_t c = rng() % 4;
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = f.add(y[j], f.mul(c, ker(r, j)));
      }
      REQUIRE(m.multiply(y) == b);
    }
  }
}

TEST_CASE("columns_independent examples") {
  const auto f2 = FieldTower::make(2, 1, 1);
  const auto id = FieldMatrix::identity(f2, Level::top, 3);
  CHECK(columns_independent(id, std::vector<std::size_t>{0, 2}));
  CHECK_FALSE(columns_independent(id, std::vector<std::size_t>{1, 1}));
  CHECK_THROWS_AS(columns_independent(id, std::vector<std::size_t>{3}), PreconditionError);
}

TEST_CASE("column independence is invariant under invertible row operations over F_2") {
  const auto t = FieldTower::make(2, 1, 1);
  // Every 3x3 matrix M and every invertible 3x3 T, all column pairs.
  std::vector<FieldMatrix> invertible;
  for (std::uint32_t code = 0; code < 512; ++code) {
    std::vector<std::uint32_t> e(9);
    for (int i = 0; i < 9; ++i) e[i] = (code >> i) & 1;
    auto m = mat(t, Level::top, 3, 3, e);
    if (rank(m) == 3) invertible.push_back(m);
  }
  CHECK(invertible.size() == 168);
  for (std::uint32_t code = 0; code < 512; code += 7) {
    std::vector<std::uint32_t> e(9);
    for (int i = 0; i < 9; ++i) e[i] = (code >> i) & 1;
    const auto m = mat(t, Level::top, 3, 3, e);
    for (const auto& tm : invertible) {
      const auto tmm = tm * m;
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
          const std::vector<std::size_t> cols{a, b};
          REQUIRE(columns_independent(m, cols) == columns_independent(tmm, cols));
        }
      }
    }
  }
}

TEST_CASE("is_mds_parity_check examples") {
  const auto f5 = FieldTower::make(5, 1, 1);
  CHECK(is_mds_parity_check(mat(f5, Level::top, 1, 4, {1, 1, 1, 1}), 1));
  CHECK(is_mds_parity_check(mat(f5, Level::top, 2, 4, {1, 1, 1, 1, 0, 1, 2, 3}), 2));
  CHECK_FALSE(is_mds_parity_check(mat(f5, Level::top, 2, 3, {1, 0, 1, 2, 0, 3}), 2));
  CHECK_THROWS_AS(is_mds_parity_check(mat(f5, Level::top, 2, 1, {1, 1}), 2), PreconditionError);
  CHECK_THROWS_AS(is_mds_parity_check(mat(f5, Level::top, 1, 3, {1, 1, 1}), 2), PreconditionError);
}

TEST_CASE("determinant agrees with the rank criterion and is multiplicative") {
  const auto t = FieldTower::make(3, 1, 2);
  const Field f = t.field(Level::top);
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_matrix(t, Level::top, 3, 3, rng);
    const auto b = random_matrix(t, Level::top, 3, 3, rng);
    REQUIRE((determinant(a) != 0) == (rank(a) == 3));
    REQUIRE(determinant(a * b) == f.mul(determinant(a), determinant(b)));
  }
  // Swapping rows negates the determinant.
  const auto f3 = FieldTower::make(3, 1, 1);
  CHECK(determinant(mat(f3, Level::top, 2, 2, {0, 1, 1, 0})) == 2);
}

TEST_CASE("ReducedBasis membership matches rank") {
  const auto t = FieldTower::make(2, 1, 1);
  std::mt19937 rng(1);
  for (int i = 0; i < 100; ++i) {
    ReducedBasis basis(t.field(Level::top), 6);
    auto m = random_matrix(t, Level::top, 3, 6, rng);
    for (std::size_t r = 0; r < 3; ++r) basis.insert(m.row(r));
    CHECK(basis.size() == rank(m));
    const auto v = random_matrix(t, Level::top, 1, 6, rng);
    CHECK(basis.contains(v.row(0)) == (rank(m.vstack(v)) == rank(m)));
  }
}

TEST_CASE("matrix text round trip and validation") {
  const auto t = FieldTower::make(2, 2, 2);
  std::mt19937 rng(2);
  const auto m = random_matrix(t, Level::top, 3, 4, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);

  std::stringstream bad("%MRLRC-MATRIX v1\np=2 a=1 m=1\nlevel=top rows=1 cols=2\n0 2\n");
  CHECK_THROWS_AS(read_matrix(bad), FormatError);
  std::stringstream short_row("%MRLRC-MATRIX v1\np=2 a=1 m=1\nlevel=top rows=1 cols=2\n0\n");
  CHECK_THROWS_AS(read_matrix(short_row), FormatError);
  std::stringstream wrong_header("%MATRIX\n");
  CHECK_THROWS_AS(read_matrix(wrong_header), FormatError);
  CHECK_THROWS_AS(FieldMatrix(t, Level::mid, 1, 1, {4}), PreconditionError);
}

TEST_CASE("lift and rehome keep codes") {
  const auto t = FieldTower::make(2, 2, 3);
  const auto m = FieldMatrix(t, Level::mid, 1, 3, {0, 1, 3});
  CHECK(m.lift(Level::top).entries() == m.entries());
  CHECK_THROWS_AS(m.lift(Level::prime), PreconditionError);
  const auto other = FieldTower::make(2, 2, 5);
  CHECK(m.rehome(other).tower() == other);
  CHECK_THROWS_AS(m.rehome(FieldTower::make(2, 1, 3)), PreconditionError);
}
