#include "cfgring/structure.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "cfgring/text.hpp"

namespace cfgring {

namespace {

using ElemSet = std::unordered_set<ProductElem, ProductElemHash>;

void over_cap(std::uint64_t cap) {
  throw CapExceeded("generated subring has more than " + std::to_string(cap) +
                    " elements (not finite at this cap, or the cap is too small)");
}

}  // namespace

std::vector<ProductElem> generated_subring(const SubringPresentation& pres, std::uint64_t cap) {
  const ProductRing& ring = pres.ambient;
  for (const auto& g : pres.gens)
    if (!(g.ring() == ring)) throw InputError("generator " + g.to_string() + " is not in " + ring.to_string());

  // Monomials in the generators and -1: the multiplicative monoid.
  std::vector<ProductElem> mult = pres.gens;
  mult.push_back(-ring.one());
  ElemSet monoid;
  std::vector<ProductElem> order;
  auto push = [&](ProductElem x) {
    if (monoid.insert(x).second) {
      if (monoid.size() > cap) over_cap(cap);
      order.push_back(std::move(x));
    }
  };
  push(ring.one());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& m : mult) push(order[i] * m);

  // Additive span of the monomials, one cyclic extension at a time.
  ElemSet span{ring.zero()};
  std::vector<ProductElem> list{ring.zero()};
  for (const auto& m : order) {
    if (span.count(m)) continue;
    const std::size_t base = list.size();
    ProductElem shift = m;
    do {
      for (std::size_t i = 0; i < base; ++i) {
        ProductElem y = list[i] + shift;
        span.insert(y);
        list.push_back(std::move(y));
      }
      if (list.size() > cap) over_cap(cap);
      shift = shift + m;
    } while (!span.count(shift));
  }
  std::sort(list.begin(), list.end());
  return list;
}

std::uint64_t FieldClass::order() const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) q *= p;
  return q;
}

std::string FieldClass::to_string() const { return "GF(" + std::to_string(order()) + ")"; }

std::vector<FieldComponent> decompose_finite_reduced(std::span<const ProductElem> T) {
  if (T.empty()) throw InputError("empty element set");
  const ProductRing& ring = T.front().ring();
  const ElemSet set(T.begin(), T.end());
  if (set.size() != T.size()) throw InputError("element list has repeats");
  if (!set.count(ring.zero()) || !set.count(ring.one())) throw InputError("set does not contain 0 and 1");

  auto closed_at = [&](const ProductElem& x, const ProductElem& y) {
    if (!set.count(x + y) || !set.count(x * y)) {
      throw InputError("set is not closed: " + x.to_string() + " and " + y.to_string());
    }
  };
  for (const auto& x : T)
    if (!set.count(-x)) throw InputError("set is not closed under negation at " + x.to_string());
  if (T.size() <= 2048) {
    for (std::size_t i = 0; i < T.size(); ++i)
      for (std::size_t j = i; j < T.size(); ++j) closed_at(T[i], T[j]);
  } else {
    std::mt19937_64 rng(0x5eed);
    for (int k = 0; k < 100000; ++k) closed_at(T[rng() % T.size()], T[rng() % T.size()]);
  }

  // Stabilized powers t^k; they depend only on the support of t.
  ElemSet supports;
  std::vector<ProductElem> idempotents;
  for (const auto& t : T) {
    if (!supports.insert(product_e(t)).second) continue;
    ProductElem power = t;
    std::size_t k = 1;
    while (!power.is_idempotent()) {
      if (++k > T.size() + 1) throw InputError("input not reduced: no power of " + t.to_string() + " is idempotent");
      power = power * t;
    }
    idempotents.push_back(std::move(power));
  }

  // Atoms of the Boolean algebra they generate.
  std::vector<ProductElem> atoms{ring.one()};
  for (const auto& e : idempotents) {
    std::vector<ProductElem> next;
    for (const auto& a : atoms) {
      for (ProductElem piece : {a * e, a - a * e})
        if (!piece.is_zero()) next.push_back(std::move(piece));
    }
    atoms = std::move(next);
  }
  std::sort(atoms.begin(), atoms.end());

  std::vector<FieldComponent> out;
  std::uint64_t product = 1;
  for (const auto& eps : atoms) {
    ElemSet block;
    for (const auto& t : T) block.insert(t * eps);
    for (const auto& x : block)
      if (!x.is_zero() && product_e(x) != eps) throw InputError("input not reduced: " + x.to_string() + " is a zero divisor");
    std::uint64_t p = 1;
    for (ProductElem acc = eps; !acc.is_zero(); acc = acc + eps) ++p;
    const std::uint64_t q = block.size();
    unsigned n = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++n;
    }
    if (!is_prime(p) || r != 1) throw InputError("component of order " + std::to_string(q) + " is not a field");
    product *= q;
    out.push_back(FieldComponent{eps, FieldClass{p, n}});
  }
  if (product != T.size())
    throw InputError("component orders multiply to " + std::to_string(product) + ", not " + std::to_string(T.size()));
  return out;
}

void RingSignature::add(FieldClass field, std::uint64_t atoms) {
  if (atoms == 0) return;
  entries_[field] += atoms;
}

std::uint64_t RingSignature::total_atoms() const {
  std::uint64_t t = 0;
  for (const auto& [f, a] : entries_) t += a;
  return t;
}

std::string RingSignature::to_string() const {
  std::string out = "sig{";
  bool first = true;
  for (const auto& [f, a] : entries_) {
    if (!first) out += ", ";
    out += f.to_string() + ":" + std::to_string(a);
    first = false;
  }
  return out + "}";
}

RingSignature parse_signature(Cursor& cur) {
  RingSignature sig;
  cur.expect("sig{");
  if (cur.consume("}")) return sig;
  do {
    const std::size_t at = cur.position();
    cur.expect("GF(");
    std::uint64_t q = cur.integer();
    std::uint64_t p = 0;
    unsigned n = 0;
    if (cur.consume("^")) {
      p = q;
      n = static_cast<unsigned>(cur.integer());
    } else {
      for (std::uint64_t d = 2; d <= q; ++d)
        if (q % d == 0) {
          p = d;
          break;
        }
      for (std::uint64_t r = q; p && r % p == 0; r /= p) ++n;
      if (p == 0 || FieldClass{p, n}.order() != q) cur.fail_at(at, "field order must be a prime power");
    }
    if (!is_prime(p) || n == 0 || n > kMaxFieldDegree) cur.fail_at(at, "not a supported field");
    cur.expect(")");
    cur.expect(":");
    const std::size_t at_count = cur.position();
    const auto atoms = cur.integer();
    if (atoms == 0) cur.fail_at(at_count, "atom totals must be positive");
    if (sig.entries().count(FieldClass{p, n})) cur.fail_at(at, "repeated field");
    sig.add(FieldClass{p, n}, atoms);
  } while (cur.consume(","));
  cur.expect("}");
  return sig;
}

RingSignature RingSignature::parse(std::string_view text) {
  Cursor cur(text);
  auto sig = parse_signature(cur);
  cur.expect_end();
  return sig;
}

std::string Decomposition::witness_text() const {
  std::string out;
  for (const auto& b : blocks) {
    out += b.component.field.to_string() + " on ";
    if (b.atoms.size() == 1) {
      out += b.atoms.front().to_string();
    } else {
      out += "(";
      for (std::size_t i = 0; i < b.atoms.size(); ++i) out += (i ? ", " : "") + b.atoms[i].to_string();
      out += ")";
    }
    out += "\n";
  }
  return out;
}

Decomposition structure_decompose(const SubringPresentation& pres, std::uint64_t cap) {
  const auto T = generated_subring(pres, cap);
  Decomposition d;
  d.subring_size = T.size();
  for (auto& c : decompose_finite_reduced(T)) {
    DecompositionBlock b{c, {}, 0};
    for (const auto& part : c.idempotent.parts()) {
      b.atoms.push_back(part.support());
      b.atom_count += b.atoms.back().count();
    }
    d.signature.add(c.field, b.atom_count);
    d.blocks.push_back(std::move(b));
  }
  return d;
}

bool iso_test(const SubringPresentation& a, const SubringPresentation& b, std::uint64_t cap) {
  return structure_decompose(a, cap).signature == structure_decompose(b, cap).signature;
}

ProductRing ring_from_signature(const RingSignature& sig) {
  if (sig.entries().empty()) throw InputError("empty signature");
  std::vector<KBRing> factors;
  for (const auto& [f, atoms] : sig.entries())
    factors.emplace_back(FiniteField::make(f.p, f.n), BooleanRing(static_cast<std::size_t>(atoms)));
  return ProductRing(std::move(factors));
}

RingSignature ambient_signature(const ProductRing& ring) {
  RingSignature sig;
  for (const auto& f : ring.factors())
    sig.add(FieldClass{f.field().characteristic(), f.field().degree()}, f.atom_count());
  return sig;
}

std::uint64_t ring_char(const ProductRing& ring) {
  std::uint64_t c = 1;
  for (const auto& f : ring.factors()) c = std::lcm(c, f.field().characteristic());
  return c;
}

std::uint64_t ring_char(const SubringPresentation& pres) { return ring_char(pres.ambient); }

std::vector<CharBlock> char_decompose(const ProductRing& ring) {
  std::vector<std::uint64_t> primes;
  for (const auto& f : ring.factors()) primes.push_back(f.field().characteristic());
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<CharBlock> out;
  for (auto p : primes) {
    CharBlock b{p, ring.one() - product_e(ring.integer(static_cast<std::int64_t>(p))), {}, {}};
    for (std::size_t i = 0; i < ring.factor_count(); ++i) {
      const auto& f = ring.factor(i);
      if (f.field().characteristic() != p) continue;
      b.factors.push_back(i);
      b.signature.add(FieldClass{p, f.field().degree()}, f.atom_count());
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace cfgring
