#include "mrlrc/gf.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "mrlrc/config.hpp"
#include "mrlrc/errors.hpp"
#include "textio.hpp"

namespace mrlrc {

namespace detail {

struct TowerData {
  std::uint32_t p = 0, a = 0, m = 0;
  LevelData prime, mid, top;
  std::vector<std::uint32_t> base_poly, ext_poly;
};

namespace {

// Fields at or below this size get log/exp tables.
constexpr std::uint32_t kTableLimit = std::uint32_t{1} << 20;
constexpr std::uint32_t kMaxDegree = 24;

using Poly = std::vector<std::uint32_t>;

void split_digits(std::uint32_t code, std::uint32_t base, std::uint32_t count,
                  std::uint32_t* out) noexcept {
  for (std::uint32_t i = 0; i < count; ++i) {
    out[i] = code % base;
    code /= base;
  }
}

std::uint32_t join_digits(const std::uint32_t* digits, std::uint32_t base,
                          std::uint32_t count) noexcept {
  std::uint32_t code = 0;
  for (std::uint32_t i = count; i-- > 0;) code = code * base + digits[i];
  return code;
}

// f(x) for a polynomial over `f` (constant term first).
std::uint32_t evaluate(Field f, const Poly& poly, std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = f.add(f.mul(acc, x), poly[i]);
  return acc;
}

// True iff the monic `divisor` divides `poly`.
bool divides(Field f, const Poly& divisor, Poly rem) {
  const std::size_t e = divisor.size() - 1;
  for (std::size_t k = rem.size() - 1; k >= e; --k) {
    const std::uint32_t c = rem[k];
    if (c != 0) {
      for (std::size_t t = 0; t <= e; ++t) {
        rem[k - e + t] = f.sub(rem[k - e + t], f.mul(c, divisor[t]));
      }
    }
    if (k == e) break;
  }
  for (std::size_t t = 0; t < e; ++t) {
    if (rem[t] != 0) return false;
  }
  return true;
}

bool is_irreducible(Field f, const Poly& poly) {
  const std::size_t d = poly.size() - 1;
  if (d <= 1) return true;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (evaluate(f, poly, x) == 0) return false;
  }
  for (std::size_t e = 2; e <= d / 2; ++e) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < e; ++i) count *= f.size();
    Poly g(e + 1);
    g[e] = 1;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::uint64_t rest = c;
      for (std::size_t i = 0; i < e; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % f.size());
        rest /= f.size();
      }
      if (divides(f, g, poly)) return false;
    }
  }
  return true;
}

// Smallest monic irreducible of the given degree, ascending by the code of
// its lower coefficients (constant term first).
Poly find_irreducible(Field f, std::uint32_t degree) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < degree; ++i) count *= f.size();
  Poly poly(degree + 1);
  poly[degree] = 1;
  for (std::uint64_t c = 0; c < count; ++c) {
    std::uint64_t rest = c;
    for (std::uint32_t i = 0; i < degree; ++i) {
      poly[i] = static_cast<std::uint32_t>(rest % f.size());
      rest /= f.size();
    }
    if (is_irreducible(f, poly)) return poly;
  }
  throw InternalError("no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t mul_by_variable(const LevelData& L, std::uint32_t code) {
  std::uint32_t c[kMaxDegree + 1];
  split_digits(code, L.sub_size, L.degree, c);
  const std::uint32_t top = c[L.degree - 1];
  for (std::uint32_t i = L.degree - 1; i > 0; --i) c[i] = c[i - 1];
  c[0] = 0;
  if (top != 0) {
    Field s(L.sub);
    for (std::uint32_t t = 0; t < L.degree; ++t) {
      c[t] = s.sub(c[t], s.mul(top, L.modulus[t]));
    }
  }
  return join_digits(c, L.sub_size, L.degree);
}

void build_tables(LevelData& L) {
  if (L.size > kTableLimit || L.size == L.p) return;
  const std::uint64_t order = L.size - 1;
  const auto factors = prime_factors(order);
  auto is_generator = [&](std::uint32_t g) {
    for (auto f : factors) {
      if (L.pow_slow(g, order / f) == 1) return false;
    }
    return true;
  };
  const std::uint32_t variable = L.sub_size;  // residue of the modulus variable
  std::uint32_t g = variable;
  if (!is_generator(g)) {
    for (g = 2; g < L.size && !is_generator(g); ++g) {
    }
  }
  L.log.assign(L.size, 0);
  L.exp.assign(2 * order, 0);
  std::uint32_t cur = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    L.exp[i] = cur;
    L.exp[i + order] = cur;
    L.log[cur] = static_cast<std::uint32_t>(i);
    cur = (g == variable) ? mul_by_variable(L, cur) : L.mul_slow(cur, g);
  }
  if (cur != 1) throw InternalError("log table generation did not close");
}

std::shared_ptr<const TowerData> build_tower(std::uint32_t p, std::uint32_t a,
                                             std::uint32_t m) {
  auto t = std::make_shared<TowerData>();
  t->p = p;
  t->a = a;
  t->m = m;

  t->prime.level = Level::prime;
  t->prime.size = p;
  t->prime.p = p;

  t->mid.level = Level::mid;
  t->mid.p = p;
  if (a == 1) {
    t->mid.size = p;
  } else {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < a; ++i) q *= p;
    t->mid.size = q;
    t->mid.degree = a;
    t->mid.sub_size = p;
    t->mid.sub = &t->prime;
    t->base_poly = find_irreducible(Field(&t->prime), a);
    t->mid.modulus = t->base_poly;
    build_tables(t->mid);
  }

  t->top.level = Level::top;
  t->top.p = p;
  if (m == 1) {
    const Level keep = Level::top;
    t->top = t->mid;
    t->top.level = keep;
  } else {
    const std::uint32_t q = t->mid.size;
    std::uint32_t size = 1;
    for (std::uint32_t i = 0; i < m; ++i) size *= q;
    t->top.size = size;
    t->top.degree = m;
    t->top.sub_size = q;
    t->top.sub = &t->mid;
    t->ext_poly = find_irreducible(Field(&t->mid), m);
    t->top.modulus = t->ext_poly;
    build_tables(t->top);
  }
  return t;
}

}  // namespace

std::uint32_t LevelData::add_digits(std::uint32_t a, std::uint32_t b) const noexcept {
  std::uint32_t out = 0, scale = 1;
  while (a != 0 || b != 0) {
    std::uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    out += s * scale;
    scale *= p;
    a /= p;
    b /= p;
  }
  return out;
}

std::uint32_t LevelData::sub_digits(std::uint32_t a, std::uint32_t b) const noexcept {
  std::uint32_t out = 0, scale = 1;
  while (a != 0 || b != 0) {
    const std::uint32_t x = a % p, y = b % p;
    out += (x >= y ? x - y : x + p - y) * scale;
    scale *= p;
    a /= p;
    b /= p;
  }
  return out;
}

std::uint32_t LevelData::mul_slow(std::uint32_t a, std::uint32_t b) const noexcept {
  if (a == 0 || b == 0) return 0;
  if (size == p) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
  }
  Field s(sub);
  std::uint32_t x[kMaxDegree], y[kMaxDegree], prod[2 * kMaxDegree] = {};
  split_digits(a, sub_size, degree, x);
  split_digits(b, sub_size, degree, y);
  for (std::uint32_t i = 0; i < degree; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < degree; ++j) {
      prod[i + j] = s.add(prod[i + j], s.mul(x[i], y[j]));
    }
  }
  for (std::uint32_t k = 2 * degree - 2; k >= degree; --k) {
    const std::uint32_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t t = 0; t < degree; ++t) {
      prod[k - degree + t] = s.sub(prod[k - degree + t], s.mul(c, modulus[t]));
    }
  }
  return join_digits(prod, sub_size, degree);
}

std::uint32_t LevelData::pow_slow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1, base = a;
  while (e != 0) {
    if (e & 1) result = mul_slow(result, base);
    base = mul_slow(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace detail

std::string_view to_string(Level level) {
  switch (level) {
    case Level::prime: return "prime";
    case Level::mid: return "mid";
    case Level::top: return "top";
  }
  return "?";
}

Level parse_level(std::string_view text) {
  if (text == "prime") return Level::prime;
  if (text == "mid") return Level::mid;
  if (text == "top") return Level::top;
  throw FormatError("unknown field level '" + std::string(text) + "'");
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw PreconditionError("inversion of zero");
  if (d_->has_tables()) {
    const std::uint32_t order = d_->size - 1;
    return d_->exp[(order - d_->log[a]) % order];
  }
  return d_->pow_slow(a, d_->size - 2);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (d_->has_tables()) {
    const std::uint64_t order = d_->size - 1;
    return d_->exp[static_cast<std::uint64_t>(d_->log[a]) * (e % order) % order];
  }
  return d_->pow_slow(a, e);
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

FieldTower FieldTower::make(std::uint32_t p, std::uint32_t a, std::uint32_t m) {
  if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
  if (a == 0 || m == 0) throw PreconditionError("extension degrees must be positive");
  std::uint64_t size = 1;
  for (std::uint64_t i = 0; i < std::uint64_t{a} * m; ++i) {
    size *= p;
    if (size > kTowerSizeCap) {
      throw PreconditionError("field size p^(a*m) exceeds the 2^24 cap");
    }
  }

  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>,
                  std::shared_ptr<const detail::TowerData>>
      cache;
  const auto key = std::make_tuple(p, a, m);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return FieldTower(it->second);
  }
  auto data = detail::build_tower(p, a, m);
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(data));
  return FieldTower(it->second);
}

std::uint32_t FieldTower::p() const noexcept { return d_->p; }
std::uint32_t FieldTower::a() const noexcept { return d_->a; }
std::uint32_t FieldTower::m() const noexcept { return d_->m; }
std::uint32_t FieldTower::q() const noexcept { return d_->mid.size; }

std::uint32_t FieldTower::size(Level level) const noexcept { return field(level).size(); }

const std::vector<std::uint32_t>& FieldTower::base_poly() const noexcept { return d_->base_poly; }
const std::vector<std::uint32_t>& FieldTower::ext_poly() const noexcept { return d_->ext_poly; }

Field FieldTower::field(Level level) const noexcept {
  switch (level) {
    case Level::prime: return Field(&d_->prime);
    case Level::mid: return Field(&d_->mid);
    case Level::top: break;
  }
  return Field(&d_->top);
}

void FieldTower::check_level(FieldElement x) const {
  if (x.code >= size(x.level)) {
    throw PreconditionError("element code " + std::to_string(x.code) + " out of range for level " +
                            std::string(mrlrc::to_string(x.level)));
  }
}

FieldElement FieldTower::element(Level level, std::uint32_t code) const {
  FieldElement e{level, code};
  check_level(e);
  return e;
}

namespace {
void require_same_level(FieldElement x, FieldElement y) {
  if (x.level != y.level) throw PreconditionError("field level mismatch");
}
}  // namespace

FieldElement FieldTower::add(FieldElement x, FieldElement y) const {
  require_same_level(x, y);
  check_level(x);
  check_level(y);
  return {x.level, field(x.level).add(x.code, y.code)};
}

FieldElement FieldTower::sub(FieldElement x, FieldElement y) const {
  require_same_level(x, y);
  check_level(x);
  check_level(y);
  return {x.level, field(x.level).sub(x.code, y.code)};
}

FieldElement FieldTower::mul(FieldElement x, FieldElement y) const {
  require_same_level(x, y);
  check_level(x);
  check_level(y);
  return {x.level, field(x.level).mul(x.code, y.code)};
}

FieldElement FieldTower::inv(FieldElement x) const {
  check_level(x);
  return {x.level, field(x.level).inv(x.code)};
}

FieldElement FieldTower::pow(FieldElement x, std::uint64_t e) const {
  check_level(x);
  return {x.level, field(x.level).pow(x.code, e)};
}

FieldElement FieldTower::arith(ArithOp op, FieldElement x, FieldElement y) const {
  switch (op) {
    case ArithOp::add: return add(x, y);
    case ArithOp::sub: return sub(x, y);
    case ArithOp::mul: return mul(x, y);
    case ArithOp::inv: return inv(x);
    case ArithOp::pow: return pow(x, y.code);
  }
  throw PreconditionError("unknown arithmetic operation");
}

std::uint32_t FieldTower::frobenius_code(std::uint32_t top_code, std::uint64_t i) const noexcept {
  const Field f = field(Level::top);
  std::uint32_t x = top_code;
  for (std::uint64_t k = 0; k < i % d_->m; ++k) x = f.pow(x, q());
  return x;
}

FieldElement FieldTower::frobenius(FieldElement x, std::uint64_t i) const {
  if (x.level != Level::top) throw PreconditionError("frobenius expects a top-level element");
  check_level(x);
  return {Level::top, frobenius_code(x.code, i)};
}

std::vector<FieldElement> FieldTower::fq_basis() const {
  std::vector<FieldElement> out;
  std::uint32_t c = 1;
  for (std::uint32_t i = 0; i < d_->m; ++i) {
    out.push_back({Level::top, c});
    c *= q();
  }
  return out;
}

void FieldTower::coordinates(std::uint32_t top_code, std::uint32_t* out) const noexcept {
  detail::split_digits(top_code, q(), d_->m, out);
}

std::vector<std::uint32_t> FieldTower::coordinates(std::uint32_t top_code) const {
  std::vector<std::uint32_t> out(d_->m);
  coordinates(top_code, out.data());
  return out;
}

std::uint32_t FieldTower::from_coordinates(const std::uint32_t* coords) const noexcept {
  return detail::join_digits(coords, q(), d_->m);
}

std::string FieldTower::to_string() const {
  std::ostringstream os;
  os << "p=" << p() << " a=" << a() << " m=" << m();
  if (!base_poly().empty()) os << " base_poly=" << textio::join(base_poly(), ',');
  if (!ext_poly().empty()) os << " ext_poly=" << textio::join(ext_poly(), ',');
  return os.str();
}

FieldTower FieldTower::parse(std::string_view text) {
  const auto kv = textio::parse_key_values(text);
  for (const auto& [key, value] : kv) {
    if (key != "p" && key != "a" && key != "m" && key != "base_poly" && key != "ext_poly") {
      throw FormatError("unexpected tower key '" + key + "'");
    }
  }
  const auto p = textio::require_u32(kv, "p");
  const auto a = textio::require_u32(kv, "a");
  const auto m = textio::require_u32(kv, "m");
  FieldTower t = [&] {
    try {
      return make(p, a, m);
    } catch (const PreconditionError& e) {
      throw FormatError(std::string("invalid tower: ") + e.what());
    }
  }();
  auto check_poly = [&](const char* key, const std::vector<std::uint32_t>& expected) {
    auto it = kv.find(key);
    if (expected.empty()) {
      if (it != kv.end()) throw FormatError(std::string(key) + " given for a degree-1 extension");
      return;
    }
    if (it == kv.end()) throw FormatError(std::string("missing ") + key);
    if (textio::parse_u32_list(it->second, ',') != expected) {
      throw FormatError(std::string(key) + " does not match the canonical polynomial");
    }
  };
  check_poly("base_poly", t.base_poly());
  check_poly("ext_poly", t.ext_poly());
  return t;
}

}  // namespace mrlrc
