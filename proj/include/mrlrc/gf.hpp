#pragma once

// Finite field tower F_p ⊆ F_q ⊆ F_{q^m}.
//
// Every element is an integer code. A mid-level code is the coefficient
// vector of a polynomial over F_p (base p, constant term first); a top-level
// code is the coefficient vector of a polynomial over F_q (base q, constant
// term first). Because each base-q digit is itself a base-p number, every
// code at every level is a little-endian base-p digit string, and addition
// is digit-wise addition mod p at all three levels. A subfield element keeps
// its code when viewed at a higher level.

#include <compare>
#include <cstdint>
#include <memory>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

namespace mrlrc {

enum class Level : std::uint8_t { prime, mid, top };

std::string_view to_string(Level level);
Level parse_level(std::string_view text);

namespace detail {

struct LevelData {
  Level level = Level::prime;
  std::uint32_t size = 0;
  std::uint32_t p = 0;
  std::uint32_t degree = 1;  // over the subfield
  std::uint32_t sub_size = 1;
  const LevelData* sub = nullptr;
  std::vector<std::uint32_t> modulus;  // monic, constant term first, sub codes
  std::vector<std::uint32_t> log;      // empty unless tables were built
  std::vector<std::uint32_t> exp;      // length 2*(size-1)

  bool has_tables() const noexcept { return !log.empty(); }
  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t sub_digits(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t pow_slow(std::uint32_t a, std::uint64_t e) const noexcept;
};

struct TowerData;

}  // namespace detail

/// Arithmetic on raw codes of one level of a tower. A lightweight view: it
/// stays valid as long as some FieldTower sharing the same data is alive.
class Field {
 public:
  explicit Field(const detail::LevelData* data) noexcept : d_(data) {}

  std::uint32_t size() const noexcept { return d_->size; }
  std::uint32_t characteristic() const noexcept { return d_->p; }
  Level level() const noexcept { return d_->level; }
  bool contains(std::uint32_t code) const noexcept { return code < d_->size; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    if (d_->p == 2) return a ^ b;
    if (d_->size == d_->p) {
      const std::uint32_t s = a + b;
      return s >= d_->p ? s - d_->p : s;
    }
    return d_->add_digits(a, b);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    if (d_->p == 2) return a ^ b;
    if (d_->size == d_->p) return a >= b ? a - b : a + d_->p - b;
    return d_->sub_digits(a, b);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return sub(0, a); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (d_->has_tables()) return d_->exp[d_->log[a] + d_->log[b]];
    return d_->mul_slow(a, b);
  }

  /// Throws PreconditionError for a == 0.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

 private:
  const detail::LevelData* d_;
};

struct FieldElement {
  Level level = Level::prime;
  std::uint32_t code = 0;

  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

enum class ArithOp : std::uint8_t { add, sub, mul, inv, pow };

/// The nested fields F_p ⊆ F_q ⊆ F_{q^m} with q = p^a. Immutable; copies
/// share one underlying table set.
class FieldTower {
 public:
  /// Builds (or fetches the memoised) tower with the smallest monic
  /// irreducible defining polynomials in ascending code order.
  static FieldTower make(std::uint32_t p, std::uint32_t a, std::uint32_t m);

  std::uint32_t p() const noexcept;
  std::uint32_t a() const noexcept;
  std::uint32_t m() const noexcept;
  std::uint32_t q() const noexcept;
  std::uint32_t size(Level level) const noexcept;

  /// Monic defining polynomial of F_q over F_p (prime codes, constant term
  /// first, leading 1 included); empty when a == 1.
  const std::vector<std::uint32_t>& base_poly() const noexcept;
  /// Monic defining polynomial of F_{q^m} over F_q (mid codes); empty when m == 1.
  const std::vector<std::uint32_t>& ext_poly() const noexcept;

  Field field(Level level) const noexcept;

  FieldElement element(Level level, std::uint32_t code) const;
  FieldElement zero(Level level) const noexcept { return {level, 0}; }
  FieldElement one(Level level) const noexcept { return {level, 1}; }

  FieldElement add(FieldElement x, FieldElement y) const;
  FieldElement sub(FieldElement x, FieldElement y) const;
  FieldElement mul(FieldElement x, FieldElement y) const;
  FieldElement inv(FieldElement x) const;
  FieldElement pow(FieldElement x, std::uint64_t e) const;
  /// Dispatches on `op`; for pow the exponent is `y.code`, level unchecked.
  FieldElement arith(ArithOp op, FieldElement x, FieldElement y) const;

  /// x^(q^i) for a top-level x, by i-fold application of x -> x^q.
  FieldElement frobenius(FieldElement x, std::uint64_t i) const;
  std::uint32_t frobenius_code(std::uint32_t top_code, std::uint64_t i) const noexcept;

  /// Polynomial basis 1, y, ..., y^(m-1) of F_{q^m} over F_q.
  std::vector<FieldElement> fq_basis() const;

  /// Coordinates of a top-level code over fq_basis (m mid codes).
  std::vector<std::uint32_t> coordinates(std::uint32_t top_code) const;
  void coordinates(std::uint32_t top_code, std::uint32_t* out) const noexcept;
  /// Inverse of coordinates().
  std::uint32_t from_coordinates(const std::uint32_t* coords) const noexcept;

  /// All codes of `level` in ascending order.
  auto enumerate(Level level) const {
    const Level lv = level;
    return std::views::iota(std::uint32_t{0}, size(level)) |
           std::views::transform([lv](std::uint32_t c) { return FieldElement{lv, c}; });
  }

  /// `p=<p> a=<a> m=<m> base_poly=<..> ext_poly=<..>`.
  std::string to_string() const;
  /// Parses to_string() output; polynomials must match make(p, a, m).
  static FieldTower parse(std::string_view text);

  friend bool operator==(const FieldTower& x, const FieldTower& y) noexcept {
    return x.p() == y.p() && x.a() == y.a() && x.m() == y.m();
  }
  bool same_base(const FieldTower& other) const noexcept {
    return p() == other.p() && a() == other.a();
  }

 private:
  explicit FieldTower(std::shared_ptr<const detail::TowerData> d) : d_(std::move(d)) {}
  void check_level(FieldElement x) const;
  std::shared_ptr<const detail::TowerData> d_;
};

/// True iff p is prime (trial division).
bool is_prime(std::uint64_t p);

}  // namespace mrlrc
