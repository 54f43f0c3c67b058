#include "cfgring/product_ring.hpp"

#include <algorithm>

#include "cfgring/text.hpp"

namespace cfgring {

ProductRing::ProductRing(std::vector<KBRing> factors)
    : factors_(std::make_shared<const std::vector<KBRing>>(std::move(factors))) {
  if (factors_->empty()) throw InputError("a product ring needs at least one factor");
}

ProductRing::ProductRing(const KBRing& single) : ProductRing(std::vector<KBRing>{single}) {}

std::size_t ProductRing::total_atoms() const noexcept {
  std::size_t n = 0;
  for (const auto& f : *factors_) n += f.atom_count();
  return n;
}

std::pair<std::size_t, std::size_t> ProductRing::locate(std::size_t global_atom) const {
  for (std::size_t i = 0; i < factors_->size(); ++i) {
    const std::size_t a = (*factors_)[i].atom_count();
    if (global_atom < a) return {i, global_atom};
    global_atom -= a;
  }
  throw InputError("global atom index out of range");
}

ProductElem ProductRing::zero() const { return integer(0); }
ProductElem ProductRing::one() const { return integer(1); }

ProductElem ProductRing::integer(std::int64_t k) const {
  std::vector<StepElem> parts;
  for (const auto& f : *factors_) parts.push_back(f.scalar(f.field().from_integer(k)));
  return ProductElem(*this, std::move(parts));
}

ProductElem ProductRing::from_parts(std::vector<StepElem> parts) const {
  if (parts.size() != factors_->size()) throw InputError("component count differs from the factor count");
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!(parts[i].ring() == (*factors_)[i]))
      throw InputError("component " + std::to_string(i) + " is not in " + (*factors_)[i].to_string());
  return ProductElem(*this, std::move(parts));
}

ProductElem ProductRing::in_factor(std::size_t i, const StepElem& x) const {
  std::vector<StepElem> parts;
  for (const auto& f : *factors_) parts.push_back(f.zero());
  parts.at(i) = x;
  return from_parts(std::move(parts));
}

ProductElem ProductRing::idempotent(std::span<const BoolElem> supports) const {
  if (supports.size() != factors_->size()) throw InputError("support count differs from the factor count");
  std::vector<StepElem> parts;
  parts.reserve(supports.size());
  for (std::size_t i = 0; i < supports.size(); ++i) parts.push_back((*factors_)[i].idempotent(supports[i]));
  return ProductElem(*this, std::move(parts));
}

std::optional<std::uint64_t> ProductRing::size() const {
  std::uint64_t s = 1;
  for (const auto& f : *factors_) {
    const std::uint64_t q = f.field().order();
    for (std::size_t j = 0; j < f.atom_count(); ++j) {
      if (s > (std::uint64_t{1} << 62) / q) return std::nullopt;
      s *= q;
    }
  }
  return s;
}

ProductElem ProductRing::element_at(std::uint64_t index) const {
  const auto n = size();
  if (!n || index >= *n) throw InputError("element index out of range");
  std::vector<StepElem> parts;
  for (const auto& f : *factors_) {
    const std::uint64_t q = f.field().order();
    std::vector<std::uint64_t> vals(f.atom_count());
    for (auto& v : vals) {
      v = index % q;
      index /= q;
    }
    parts.push_back(f.from_values(vals));
  }
  return ProductElem(*this, std::move(parts));
}

std::uint64_t ProductRing::index_of(const ProductElem& x) const {
  if (!(x.ring() == *this)) throw InputError("element from a different ring");
  if (!size()) throw InputError("ring too large to index");
  std::uint64_t index = 0, weight = 1;
  for (std::size_t i = 0; i < factors_->size(); ++i) {
    const std::uint64_t q = (*factors_)[i].field().order();
    for (auto v : x.part(i).values()) {
      index += v * weight;
      weight *= q;
    }
  }
  return index;
}

std::vector<ProductElem> ProductRing::elements(std::uint64_t cap) const {
  const auto n = size();
  if (!n || *n > cap)
    throw CapExceeded("ring " + to_string() + " has more than " + std::to_string(cap) + " elements");
  std::vector<ProductElem> out;
  out.reserve(*n);
  for (std::uint64_t i = 0; i < *n; ++i) out.push_back(element_at(i));
  return out;
}

std::string ProductRing::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < factors_->size(); ++i) {
    if (i) out += " x ";
    out += (*factors_)[i].to_string();
  }
  return out;
}

namespace {

FiniteField parse_field(Cursor& cur) {
  cur.expect("GF(");
  const std::size_t at = cur.position();
  std::uint64_t q = cur.integer();
  std::uint64_t p = 0;
  unsigned n = 0;
  if (cur.consume("^")) {
    p = q;
    const auto e = cur.integer();
    if (e == 0 || e > kMaxFieldDegree) cur.fail_at(at, "field degree out of range");
    n = static_cast<unsigned>(e);
  } else {
    if (q < 2) cur.fail_at(at, "field order must be a prime power");
    std::uint64_t d = 2;
    while (d * d <= q && q % d) ++d;
    if (d * d > q) d = q;
    p = d;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++n;
    }
    if (r != 1) cur.fail_at(at, "field order must be a prime power");
  }
  cur.expect(")");
  try {
    return FiniteField::make(p, n);
  } catch (const InputError& e) {
    cur.fail_at(at, e.what());
  }
}

KBRing parse_factor(Cursor& cur) {
  auto field = parse_field(cur);
  if (cur.consume("^")) {
    cur.expect("[");
    cur.expect("B(atoms=");
    const std::size_t at = cur.position();
    const auto n = cur.integer();
    cur.expect(")");
    cur.expect("]");
    try {
      return KBRing(field, BooleanRing(n));
    } catch (const InputError& e) {
      cur.fail_at(at, e.what());
    }
  }
  return KBRing(field, BooleanRing(1));
}

}  // namespace

ProductRing ProductRing::parse(std::string_view text) {
  Cursor cur(text);
  std::vector<KBRing> factors;
  factors.push_back(parse_factor(cur));
  while (cur.consume("x")) factors.push_back(parse_factor(cur));
  cur.expect_end();
  return ProductRing(std::move(factors));
}

ProductElem parse_product_elem(const ProductRing& ring, Cursor& cur) {
  auto scalar_component = [&](std::size_t i, std::string_view t, std::size_t start) {
    const auto& f = ring.factor(i);
    try {
      return f.scalar(f.field().parse_code(t));
    } catch (const ParseError& e) {
      cur.rethrow(e, start);
    }
  };
  std::vector<StepElem> parts;
  if (cur.consume("(")) {
    for (std::size_t i = 0; i < ring.factor_count(); ++i) {
      if (i) cur.expect(",");
      if (cur.peek("{")) {
        parts.push_back(parse_step_elem(ring.factor(i), cur));
      } else {
        std::size_t start = 0;
        auto t = cur.take_until(",)", start);
        parts.push_back(scalar_component(i, t, start));
      }
    }
    cur.expect(")");
  } else if (cur.peek("{")) {
    if (ring.factor_count() != 1) cur.fail("elements of a product need a (..., ...) tuple");
    parts.push_back(parse_step_elem(ring.factor(0), cur));
  } else {
    std::size_t start = 0;
    auto t = cur.take_until(",;)]}", start);
    for (std::size_t i = 0; i < ring.factor_count(); ++i) parts.push_back(scalar_component(i, t, start));
  }
  return ring.from_parts(std::move(parts));
}

ProductElem ProductRing::parse_element(std::string_view text) const {
  Cursor cur(text);
  auto e = parse_product_elem(*this, cur);
  cur.expect_end();
  return e;
}

// ---------------------------------------------------------------------------

bool ProductElem::is_zero() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](const StepElem& s) { return s.is_zero(); });
}

bool ProductElem::is_one() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](const StepElem& s) { return s.is_one(); });
}

bool ProductElem::is_idempotent() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](const StepElem& s) { return s.is_idempotent(); });
}

std::vector<std::uint64_t> ProductElem::values() const {
  std::vector<std::uint64_t> out;
  for (const auto& p : parts_) {
    auto v = p.values();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

ProductElem ProductElem::pow(std::uint64_t e) const {
  std::vector<StepElem> parts;
  for (const auto& p : parts_) parts.push_back(p.pow(e));
  return ProductElem(ring_, std::move(parts));
}

std::string ProductElem::to_string() const {
  if (parts_.size() == 1) return parts_.front().to_string();
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ", ";
    out += parts_[i].to_string();
  }
  return out + ")";
}

std::size_t ProductElem::hash() const noexcept {
  std::size_t h = 0;
  for (const auto& p : parts_) h ^= p.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

namespace {

template <class Op>
ProductElem zip(const ProductElem& x, const ProductElem& y, Op op) {
  if (!(x.ring() == y.ring())) throw InputError("mixed rings: " + x.ring().to_string() + " and " + y.ring().to_string());
  std::vector<StepElem> parts;
  parts.reserve(x.parts().size());
  for (std::size_t i = 0; i < x.parts().size(); ++i) parts.push_back(op(x.parts()[i], y.parts()[i]));
  return x.ring().from_parts(std::move(parts));
}

}  // namespace

ProductElem operator+(const ProductElem& x, const ProductElem& y) {
  return zip(x, y, [](const StepElem& a, const StepElem& b) { return a + b; });
}
ProductElem operator-(const ProductElem& x, const ProductElem& y) {
  return zip(x, y, [](const StepElem& a, const StepElem& b) { return a - b; });
}
ProductElem operator*(const ProductElem& x, const ProductElem& y) {
  return zip(x, y, [](const StepElem& a, const StepElem& b) { return a * b; });
}
ProductElem operator-(const ProductElem& x) {
  std::vector<StepElem> parts;
  for (const auto& p : x.parts_) parts.push_back(-p);
  return ProductElem(x.ring_, std::move(parts));
}

std::strong_ordering operator<=>(const ProductElem& a, const ProductElem& b) noexcept {
  const std::size_t n = std::min(a.parts_.size(), b.parts_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = a.parts_[i] <=> b.parts_[i]; c != 0) return c;
  return a.parts_.size() <=> b.parts_.size();
}

ProductElem product_e(const ProductElem& x) {
  std::vector<StepElem> parts;
  for (const auto& p : x.parts()) parts.push_back(kb_e(p));
  return x.ring().from_parts(std::move(parts));
}

ProductElem product_quasi_inverse(const ProductElem& x) {
  std::vector<StepElem> parts;
  for (const auto& p : x.parts()) parts.push_back(kb_quasi_inverse(p));
  return x.ring().from_parts(std::move(parts));
}

bool product_cfoi_check(std::span<const ProductElem> family) {
  if (family.empty()) return false;
  const auto& ring = family.front().ring();
  for (std::size_t i = 0; i < ring.factor_count(); ++i) {
    std::vector<BoolElem> comp;
    comp.reserve(family.size());
    for (const auto& a : family) {
      if (!(a.ring() == ring) || !a.is_idempotent()) return false;
      comp.push_back(a.part(i).support());
    }
    if (!br_cfoi_check(comp)) return false;
  }
  return true;
}

ProductElem product_conv(const ProductCombo& combo) {
  if (combo.coeffs.size() != combo.values.size()) throw InputError("coefficient and value counts differ");
  if (!product_cfoi_check(combo.coeffs))
    throw InputError("coefficients are not a complete family of orthogonal idempotents");
  const auto& ring = combo.values.front().ring();
  std::vector<StepElem> parts;
  parts.reserve(ring.factor_count());
  for (std::size_t i = 0; i < ring.factor_count(); ++i) {
    std::vector<Block> cells;
    for (std::size_t k = 0; k < combo.coeffs.size(); ++k) {
      if (!(combo.values[k].ring() == ring)) throw InputError("combination values lie in different rings");
      const BoolElem a = combo.coeffs[k].part(i).support();
      if (a.is_zero()) continue;
      for (const auto& b : combo.values[k].part(i).blocks()) {
        BoolElem part = b.part & a;
        if (!part.is_zero()) cells.push_back(Block{std::move(part), b.value});
      }
    }
    parts.push_back(StepElem::from_blocks(ring.factor(i), std::move(cells)));
  }
  return ring.from_parts(std::move(parts));
}

ProductCombo product_conv_extract(const ProductElem& x, std::span<const ProductElem> gens) {
  const auto& ring = x.ring();
  for (const auto& g : gens)
    if (!(g.ring() == ring)) throw InputError("generator lies in a different ring");
  // Coefficient of generator k on factor i at k * F + i.
  const std::size_t F = ring.factor_count();
  std::vector<BoolElem> flat(gens.size() * F, BoolElem(ring.factor(0).bool_ring()));
  for (std::size_t i = 0; i < F; ++i) {
    std::vector<BoolElem> coeffs;
    try {
      coeffs = kb_extract_coeffs(x.part(i), gens.size(),
                                 [&](std::size_t k) -> const StepElem& { return gens[k].part(i); });
    } catch (const NotAWitness& e) {
      throw NotAWitness(i, e.atom(), ring.factor(i).field().format(x.code_at(i, e.atom())));
    }
    for (std::size_t k = 0; k < gens.size(); ++k) flat[k * F + i] = std::move(coeffs[k]);
  }
  ProductCombo out;
  out.coeffs.reserve(gens.size());
  out.values.reserve(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    out.coeffs.push_back(ring.idempotent(std::span<const BoolElem>(flat).subspan(k * F, F)));
    out.values.push_back(gens[k]);
  }
  return out;
}

ProductElem random_element(const ProductRing& ring, std::mt19937_64& rng) {
  std::vector<StepElem> parts;
  for (const auto& f : ring.factors()) {
    const std::uint64_t q = f.field().order();
    const std::size_t atoms = f.atom_count();
    if (atoms <= 4096) {
      std::vector<std::uint64_t> vals(atoms);
      for (auto& v : vals) v = rng() % q;
      parts.push_back(f.from_values(vals));
      continue;
    }
    const std::size_t pieces = 1 + static_cast<std::size_t>(rng() % 4);
    std::vector<std::size_t> cuts{0, atoms};
    for (std::size_t i = 1; i < pieces; ++i) cuts.push_back(static_cast<std::size_t>(rng() % atoms));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Block> blocks;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i] == cuts[i + 1]) continue;
      BoolElem part(f.bool_ring());
      part.set_range(cuts[i], cuts[i + 1]);
      blocks.push_back(Block{std::move(part), rng() % q});
    }
    parts.push_back(StepElem::from_blocks(f, std::move(blocks)));
  }
  return ring.from_parts(std::move(parts));
}

std::vector<ProductElem> factor_generators(const ProductRing& ring) {
  std::vector<ProductElem> out;
  for (std::size_t i = 0; i < ring.factor_count(); ++i) {
    const auto& f = ring.factor(i);
    if (f.field().degree() == 1) continue;
    out.push_back(ring.in_factor(i, f.scalar(f.field().generator())));
  }
  return out;
}

std::vector<ProductElem> covering_scalars(const ProductRing& ring) {
  std::uint64_t n = 0;
  for (const auto& f : ring.factors()) n = std::max(n, f.field().order());
  std::vector<ProductElem> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::vector<StepElem> parts;
    for (const auto& f : ring.factors()) parts.push_back(f.scalar(i < f.field().order() ? i : 0));
    out.push_back(ring.from_parts(std::move(parts)));
  }
  return out;
}

}  // namespace cfgring
