#include "cfgring/finite_field.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "cfgring/errors.hpp"

namespace cfgring {

namespace {

using Poly = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

// Remainder of a modulo m (m nonzero, trimmed).
Poly poly_rem(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() > dm && !a.empty()) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = poly_rem(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_rem(poly_mul(r, base, p), m, p);
    base = poly_rem(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

// Ben-Or: a monic f of degree n is irreducible iff gcd(f, X^{p^i} - X) = 1
// for every 1 <= i <= n/2.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  Poly h{0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Poly d = h;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    if (d.empty()) return false;
    if (poly_gcd(f, d, p).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t p) noexcept {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct FiniteField::Data {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::uint64_t q = 0;
  Poly modulus;
  std::vector<std::uint64_t> pow_p;
  std::vector<std::uint32_t> exp_table;  // length 2(q-1)
  std::vector<std::uint32_t> log_table;
  std::vector<std::uint16_t> add_table;  // odd p, q <= 256

  std::vector<std::uint64_t> digits(std::uint64_t code) const {
    std::vector<std::uint64_t> d(n);
    for (unsigned i = 0; i < n; ++i) {
      d[i] = code % p;
      code /= p;
    }
    return d;
  }

  std::uint64_t pack(const Poly& d) const {
    std::uint64_t code = 0;
    for (std::size_t i = std::min<std::size_t>(d.size(), n); i-- > 0;) code = code * p + d[i];
    return code;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (p == 2) return a ^ b;
    if (n == 1) return (a + b) % p;
    if (!add_table.empty()) return add_table[a * q + b];
    std::uint64_t r = 0;
    for (unsigned i = 0; i < n; ++i) {
      r += ((a % p + b % p) % p) * pow_p[i];
      a /= p;
      b /= p;
    }
    return r;
  }

  std::uint64_t neg(std::uint64_t a) const {
    if (p == 2) return a;
    if (n == 1) return (p - a) % p;
    std::uint64_t r = 0;
    for (unsigned i = 0; i < n; ++i) {
      r += ((p - a % p) % p) * pow_p[i];
      a /= p;
    }
    return r;
  }

  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const {
    Poly prod = poly_mul(digits(a), digits(b), p);
    return pack(poly_rem(std::move(prod), modulus, p));
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (n == 1) return mulmod(a, b, p);
    if (a == 0 || b == 0) return 0;
    if (!exp_table.empty()) return exp_table[log_table[a] + log_table[b]];
    return mul_slow(a, b);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    if (n == 1) return powmod(a, e, p);
    if (!exp_table.empty()) {
      if (a == 0) return e == 0 ? 1 : 0;
      const std::uint64_t k = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(log_table[a]) * (e % (q - 1)) % (q - 1));
      return exp_table[k];
    }
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  void build_tables() {
    // Least primitive element by code.
    const auto factors = prime_factors(q - 1);
    std::uint64_t prim = 0;
    auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
      std::uint64_t r = 1;
      while (e) {
        if (e & 1) r = mul_slow(r, a);
        a = mul_slow(a, a);
        e >>= 1;
      }
      return r;
    };
    for (std::uint64_t c = 1; c < q && prim == 0; ++c) {
      bool ok = true;
      for (auto r : factors)
        if (slow_pow(c, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      if (ok) prim = c;
    }
    exp_table.resize(2 * (q - 1));
    log_table.assign(q, 0);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < q - 1; ++i) {
      exp_table[i] = static_cast<std::uint32_t>(x);
      log_table[x] = static_cast<std::uint32_t>(i);
      x = mul_slow(x, prim);
    }
    for (std::uint64_t i = q - 1; i < 2 * (q - 1); ++i) exp_table[i] = exp_table[i - (q - 1)];
    if (p != 2 && q <= 256) {
      add_table.resize(q * q);
      for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b) {
          std::uint64_t r = 0, x1 = a, y1 = b;
          for (unsigned i = 0; i < n; ++i) {
            r += ((x1 % p + y1 % p) % p) * pow_p[i];
            x1 /= p;
            y1 /= p;
          }
          add_table[a * q + b] = static_cast<std::uint16_t>(r);
        }
    }
  }
};

FiniteField FiniteField::make(std::uint64_t p, unsigned n) {
  if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 31)) throw InputError("field characteristic must be below 2^31");
  if (n < 1 || n > kMaxFieldDegree)
    throw InputError("field degree " + std::to_string(n) + " outside [1, " +
                     std::to_string(kMaxFieldDegree) + "]");
  auto d = std::make_shared<Data>();
  d->p = p;
  d->n = n;
  std::uint64_t q = 1;
  d->pow_p.push_back(1);
  for (unsigned i = 0; i < n; ++i) {
    if (q > (std::uint64_t{1} << 62) / p)
      throw InputError("field order " + std::to_string(p) + "^" + std::to_string(n) +
                       " exceeds 2^62");
    q *= p;
    d->pow_p.push_back(q);
  }
  d->q = q;

  // Lexicographically least irreducible monic: c_0 .. c_{n-1} as a base-p
  // counter with c_0 fastest.
  Poly f(n + 1, 0);
  f[n] = 1;
  for (;;) {
    if (is_irreducible(f, p)) break;
    std::size_t i = 0;
    while (i < n) {
      if (++f[i] < p) break;
      f[i++] = 0;
    }
    if (i == n) throw InputError("no irreducible polynomial found");  // unreachable
  }
  d->modulus = f;
  if (n >= 2 && q <= kTableFieldOrder) d->build_tables();
  return FiniteField(std::move(d));
}

std::uint64_t FiniteField::characteristic() const noexcept { return d_->p; }
unsigned FiniteField::degree() const noexcept { return d_->n; }
std::uint64_t FiniteField::order() const noexcept { return d_->q; }
const std::vector<std::uint64_t>& FiniteField::modulus() const noexcept { return d_->modulus; }

std::uint64_t FiniteField::add(std::uint64_t a, std::uint64_t b) const { return d_->add(a, b); }
std::uint64_t FiniteField::sub(std::uint64_t a, std::uint64_t b) const {
  return d_->add(a, d_->neg(b));
}
std::uint64_t FiniteField::neg(std::uint64_t a) const { return d_->neg(a); }
std::uint64_t FiniteField::mul(std::uint64_t a, std::uint64_t b) const { return d_->mul(a, b); }
std::uint64_t FiniteField::pow(std::uint64_t a, std::uint64_t e) const { return d_->pow(a, e); }

std::uint64_t FiniteField::inv(std::uint64_t a) const {
  if (a == 0) throw InputError("inverse of zero in " + to_string());
  if (!d_->exp_table.empty()) {
    const std::uint64_t l = d_->log_table[a];
    return d_->exp_table[(d_->q - 1 - l) % (d_->q - 1)];
  }
  return d_->pow(a, d_->q - 2);
}

std::uint64_t FiniteField::from_integer(std::int64_t k) const {
  const auto p = static_cast<std::int64_t>(d_->p);
  return static_cast<std::uint64_t>(((k % p) + p) % p);
}

std::vector<std::uint64_t> FiniteField::digits(std::uint64_t code) const { return d_->digits(code); }

std::uint64_t FiniteField::from_digits(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > d_->n) throw InputError("too many coefficients for " + to_string());
  for (auto c : coeffs)
    if (c >= d_->p) throw InputError("coefficient out of range for " + to_string());
  return d_->pack(Poly(coeffs.begin(), coeffs.end()));
}

FieldElem FiniteField::elem(std::uint64_t code) const {
  if (code >= d_->q) throw InputError("element code out of range for " + to_string());
  return FieldElem(*this, code);
}
FieldElem FiniteField::zero() const { return FieldElem(*this, 0); }
FieldElem FiniteField::one() const { return FieldElem(*this, 1); }
FieldElem FiniteField::generator() const { return FieldElem(*this, d_->n == 1 ? 0 : d_->p); }

FieldElem FiniteField::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  return FieldElem(*this, from_digits(coeffs));
}

std::vector<FieldElem> FiniteField::elements() const {
  if (d_->q > (std::uint64_t{1} << 20)) throw CapExceeded("field " + to_string() + " too large to enumerate");
  std::vector<FieldElem> out;
  out.reserve(d_->q);
  for (std::uint64_t c = 0; c < d_->q; ++c) out.emplace_back(*this, c);
  return out;
}

std::string FiniteField::to_string() const { return "GF(" + std::to_string(d_->q) + ")"; }

std::string FiniteField::format(std::uint64_t code) const {
  if (d_->n == 1) return std::to_string(code);
  const auto d = d_->digits(code);
  std::string out;
  for (unsigned i = d_->n; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]);
    out += 'g';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::uint64_t FiniteField::parse_code(std::string_view text) const {
  const std::string s(text);
  auto fail = [&](std::size_t pos, const std::string& msg) -> ParseError {
    return ParseError(s, pos, msg + " (element of " + to_string() + ")");
  };
  auto read_int = [&](std::size_t& pos) -> std::optional<std::uint64_t> {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return std::nullopt;
    std::uint64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) throw fail(pos, "integer too large");
      v = v * 10 + static_cast<std::uint64_t>(s[pos++] - '0');
    }
    return v;
  };
  if (s.empty()) throw fail(0, "empty element");
  if (s == "0") return 0;
  std::vector<std::uint64_t> coeff(d_->n, 0);
  std::vector<bool> seen(d_->n, false);
  std::size_t pos = 0;
  for (;;) {
    const std::size_t term_start = pos;
    auto c = read_int(pos);
    std::uint64_t exponent = 0;
    if (pos < s.size() && s[pos] == 'g') {
      if (d_->n == 1) throw fail(pos, "prime field elements have no 'g' terms");
      ++pos;
      exponent = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        const std::size_t epos = pos;
        auto e = read_int(pos);
        if (!e) throw fail(pos, "expected exponent after '^'");
        if (*e < 2) throw fail(epos, "exponent must be at least 2");
        exponent = *e;
      }
      if (c && (*c < 2)) throw fail(term_start, "coefficient of a g-term must be omitted or at least 2");
      if (!c) c = 1;
    } else if (!c) {
      throw fail(pos, "expected coefficient or 'g'");
    } else if (*c == 0) {
      throw fail(term_start, "zero term");
    }
    if (*c >= d_->p) throw fail(term_start, "coefficient must be below " + std::to_string(d_->p));
    if (exponent >= d_->n) throw fail(term_start, "exponent must be below the degree " + std::to_string(d_->n));
    if (seen[exponent]) throw fail(term_start, "repeated monomial");
    seen[exponent] = true;
    coeff[exponent] = *c;
    if (pos == s.size()) break;
    if (s[pos] != '+') throw fail(pos, "expected '+'");
    ++pos;
  }
  return d_->pack(coeff);
}

FieldElem FiniteField::parse(std::string_view text) const { return FieldElem(*this, parse_code(text)); }

FieldElem::FieldElem(FiniteField field, std::uint64_t code) : field_(std::move(field)), code_(code) {
  if (code_ >= field_.order()) throw InputError("element code out of range for " + field_.to_string());
}

namespace {
void require_same(const FieldElem& a, const FieldElem& b) {
  if (!(a.field() == b.field()))
    throw InputError("mixed fields: " + a.field().to_string() + " and " + b.field().to_string());
}
}  // namespace

FieldElem FieldElem::inverse() const { return FieldElem(field_, field_.inv(code_)); }
FieldElem FieldElem::pow(std::uint64_t e) const { return FieldElem(field_, field_.pow(code_, e)); }

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field_, a.field_.add(a.code_, b.code_));
}
FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field_, a.field_.sub(a.code_, b.code_));
}
FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return FieldElem(a.field_, a.field_.mul(a.code_, b.code_));
}
FieldElem operator-(const FieldElem& a) { return FieldElem(a.field_, a.field_.neg(a.code_)); }

FieldElem ff_arith(FieldOp op, const FieldElem& x, const std::optional<FieldElem>& y) {
  switch (op) {
    case FieldOp::add:
      if (!y) throw InputError("add needs two operands");
      return x + *y;
    case FieldOp::mul:
      if (!y) throw InputError("mul needs two operands");
      return x * *y;
    case FieldOp::neg:
      return -x;
    case FieldOp::inv:
      return x.inverse();
  }
  throw InputError("unknown field operation");
}

// ---------------------------------------------------------------------------
// Embeddings

namespace {

std::uint64_t least_root(const FiniteField& sub, const FiniteField& sup) {
  const auto& m = sub.modulus();
  for (std::uint64_t c = 0; c < sup.order(); ++c)
    if (ff_poly_eval(sup, m, c) == 0) return c;
  throw InputError("no root of the modulus of " + sub.to_string() + " in " + sup.to_string());
}

std::uint64_t smallest_prime_factor(std::uint64_t k) {
  for (std::uint64_t d = 2; d * d <= k; ++d)
    if (k % d == 0) return d;
  return k;
}

}  // namespace

FieldEmbedding FieldEmbedding::make(const FiniteField& sub, const FiniteField& sup) {
  if (sub.characteristic() != sup.characteristic())
    throw InputError("cannot embed " + sub.to_string() + " into " + sup.to_string() +
                     ": characteristics differ");
  if (sup.degree() % sub.degree() != 0)
    throw InputError("cannot embed " + sub.to_string() + " into " + sup.to_string() +
                     ": degree does not divide");
  if (sub.degree() == 1) return FieldEmbedding(sub, sup, 0);
  if (sub.degree() == sup.degree()) return FieldEmbedding(sub, sup, sup.characteristic());
  if (sup.order() > kMaxEmbeddingTarget)
    throw InputError("embedding target " + sup.to_string() + " exceeds the enumeration cap");
  const std::uint64_t ratio = sup.degree() / sub.degree();
  const std::uint64_t l = smallest_prime_factor(ratio);
  if (l == ratio) return FieldEmbedding(sub, sup, least_root(sub, sup));
  const auto mid = FiniteField::make(sup.characteristic(), sup.degree() / static_cast<unsigned>(l));
  const auto inner = FieldEmbedding::make(sub, mid);
  const auto outer = FieldEmbedding::make(mid, sup);
  return FieldEmbedding(sub, sup, outer.map_code(inner.generator_image()));
}

FieldEmbedding::FieldEmbedding(FiniteField sub, FiniteField sup, std::uint64_t gen_image)
    : source_(std::move(sub)), target_(std::move(sup)), generator_image_(gen_image) {
  if (source_.order() <= kTableFieldOrder) {
    table_.resize(source_.order());
    for (std::uint64_t c = 0; c < source_.order(); ++c) {
      const auto d = source_.digits(c);
      std::uint64_t acc = 0;
      for (std::size_t i = d.size(); i-- > 0;) acc = target_.add(target_.mul(acc, generator_image_), d[i]);
      table_[c] = acc;
    }
  }
}

std::uint64_t FieldEmbedding::map_code(std::uint64_t code) const {
  if (!table_.empty()) return table_.at(code);
  const auto d = source_.digits(code);
  std::uint64_t acc = 0;
  for (std::size_t i = d.size(); i-- > 0;) acc = target_.add(target_.mul(acc, generator_image_), d[i]);
  return acc;
}

FieldElem FieldEmbedding::operator()(const FieldElem& x) const {
  if (!(x.field() == source_)) throw InputError("element not in " + source_.to_string());
  return FieldElem(target_, map_code(x.code()));
}

FieldElem ff_embed(const FiniteField& sub, const FiniteField& sup, const FieldElem& x) {
  return FieldEmbedding::make(sub, sup)(x);
}

// ---------------------------------------------------------------------------
// Interpolation

std::uint64_t ff_poly_eval(const FiniteField& field, std::span<const std::uint64_t> coeffs,
                           std::uint64_t x) {
  std::uint64_t acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = field.add(field.mul(acc, x), coeffs[i]);
  return acc;
}

std::vector<std::uint64_t> ff_lagrange_basis(const FiniteField& field, std::uint64_t point) {
  const std::uint64_t q = field.order();
  // Quotient of X^q - X by (X - point), by synthetic division.
  std::vector<std::uint64_t> quot(q, 0);
  quot[q - 1] = 1;
  for (std::uint64_t i = q - 1; i >= 1; --i) {
    const std::uint64_t m_i = (i == 1) ? field.neg(1) : 0;
    quot[i - 1] = field.add(m_i, field.mul(point, quot[i]));
  }
  for (auto& c : quot) c = field.neg(c);
  return quot;
}

std::vector<std::uint64_t> ff_lagrange_codes(const FiniteField& field,
                                             std::span<const std::uint64_t> values_by_code) {
  const std::uint64_t q = field.order();
  if (values_by_code.size() != q) throw InputError("interpolation table must list every element");
  std::vector<std::uint64_t> out(q, 0);
  for (std::uint64_t a = 0; a < q; ++a) {
    const std::uint64_t v = values_by_code[a];
    if (v >= q) throw InputError("interpolation value out of range");
    if (v == 0) continue;
    const auto basis = ff_lagrange_basis(field, a);
    for (std::uint64_t i = 0; i < q; ++i) out[i] = field.add(out[i], field.mul(v, basis[i]));
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::vector<FieldElem> ff_lagrange(const FiniteField& field,
                                   std::span<const std::pair<FieldElem, FieldElem>> table) {
  const std::uint64_t q = field.order();
  std::vector<std::uint64_t> values(q, 0);
  std::vector<bool> seen(q, false);
  for (const auto& [x, y] : table) {
    if (!(x.field() == field) || !(y.field() == field))
      throw InputError("interpolation table entries must lie in " + field.to_string());
    if (seen[x.code()]) throw InputError("interpolation table lists " + x.to_string() + " twice");
    seen[x.code()] = true;
    values[x.code()] = y.code();
  }
  for (std::uint64_t c = 0; c < q; ++c)
    if (!seen[c]) throw InputError("partial interpolation table: missing " + field.format(c));
  std::vector<FieldElem> out;
  for (auto c : ff_lagrange_codes(field, values)) out.emplace_back(field, c);
  return out;
}

}  // namespace cfgring
