#include "cfgring/kb_ring.hpp"

#include <algorithm>

#include "cfgring/text.hpp"

namespace cfgring {

KBRing::KBRing(FiniteField field, BooleanRing bool_ring)
    : field_(std::move(field)), bool_ring_(bool_ring) {}

StepElem KBRing::zero() const { return scalar(0); }
StepElem KBRing::one() const { return scalar(1); }

StepElem KBRing::scalar(std::uint64_t code) const {
  if (code >= field_.order()) throw InputError("scalar code out of range for " + field_.to_string());
  return StepElem(*this, {Block{bool_ring_.one(), code}});
}

StepElem KBRing::scalar(const FieldElem& k) const {
  if (!(k.field() == field_)) throw InputError("scalar " + k.to_string() + " is not in " + field_.to_string());
  return scalar(k.code());
}

StepElem KBRing::idempotent(const BoolElem& b) const {
  if (!(b.ring() == bool_ring_)) throw InputError("idempotent from a different Boolean ring");
  if (b.is_zero()) return zero();
  if (b.is_one()) return one();
  // Already normal: two disjoint nonempty parts, sorted by value.
  std::vector<Block> cells;
  cells.reserve(2);
  cells.push_back(Block{b.complement(), 0});
  cells.push_back(Block{b, 1});
  return StepElem(*this, std::move(cells));
}

StepElem KBRing::from_values(std::span<const std::uint64_t> values) const {
  if (values.size() != atom_count()) throw InputError("value vector length differs from the atom count");
  std::vector<std::uint64_t> distinct(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<Block> blocks;
  blocks.reserve(distinct.size());
  for (auto v : distinct) {
    if (v >= field_.order()) throw InputError("value code out of range for " + field_.to_string());
    blocks.push_back(Block{bool_ring_.zero(), v});
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    auto it = std::lower_bound(distinct.begin(), distinct.end(), values[j]);
    blocks[static_cast<std::size_t>(it - distinct.begin())].part.set(j);
  }
  return StepElem(*this, std::move(blocks));
}

std::optional<std::uint64_t> KBRing::size() const {
  std::uint64_t s = 1;
  const std::uint64_t q = field_.order();
  for (std::size_t i = 0; i < atom_count(); ++i) {
    if (s > (std::uint64_t{1} << 62) / q) return std::nullopt;
    s *= q;
  }
  return s;
}

std::string KBRing::to_string() const { return field_.to_string() + "^[" + bool_ring_.to_string() + "]"; }

StepElem KBRing::parse_element(std::string_view text) const {
  Cursor cur(text);
  auto e = parse_step_elem(*this, cur);
  cur.expect_end();
  return e;
}

StepElem parse_step_elem(const KBRing& ring, Cursor& cur) {
  cur.expect("{");
  std::vector<Block> blocks;
  const std::size_t open = cur.position();
  for (;;) {
    std::size_t start = 0;
    cur.skip_ws();
    if (!cur.peek("[")) cur.fail("expected an atom list");
    auto atoms_text = cur.take_until("-;}", start);
    BoolElem part(ring.bool_ring());
    try {
      part = ring.bool_ring().parse_element(atoms_text);
    } catch (const ParseError& e) {
      cur.rethrow(e, start);
    }
    if (part.is_zero()) cur.fail_at(start, "empty block");
    cur.expect("->");
    auto value_text = cur.take_until(";}", start);
    std::uint64_t value = 0;
    try {
      value = ring.field().parse_code(value_text);
    } catch (const ParseError& e) {
      cur.rethrow(e, start);
    }
    for (const auto& b : blocks) {
      if (b.part.intersects(part)) cur.fail_at(start, "blocks overlap");
      if (b.value == value) cur.fail_at(start, "repeated block value");
    }
    blocks.push_back(Block{std::move(part), value});
    if (cur.consume("}")) break;
    cur.expect(";");
  }
  try {
    return StepElem::from_blocks(ring, std::move(blocks));
  } catch (const InputError& e) {
    cur.fail_at(open, e.what());
  }
}

// ---------------------------------------------------------------------------

StepElem StepElem::normalized(const KBRing& ring, std::vector<Block> cells) {
  std::sort(cells.begin(), cells.end(), [](const Block& a, const Block& b) { return a.value < b.value; });
  std::vector<Block> out;
  out.reserve(cells.size());
  for (auto& c : cells) {
    if (!out.empty() && out.back().value == c.value)
      out.back().part |= c.part;
    else
      out.push_back(std::move(c));
  }
  return StepElem(ring, std::move(out));
}

StepElem StepElem::from_blocks(const KBRing& ring, std::vector<Block> blocks) {
  BoolElem cover(ring.bool_ring());
  std::vector<Block> kept;
  kept.reserve(blocks.size());
  for (auto& b : blocks) {
    if (!(b.part.ring() == ring.bool_ring())) throw InputError("block from a different Boolean ring");
    if (b.value >= ring.field().order()) throw InputError("block value out of range");
    if (b.part.is_zero()) continue;
    if (cover.intersects(b.part)) throw InputError("blocks overlap");
    cover |= b.part;
    kept.push_back(std::move(b));
  }
  if (!cover.is_one()) throw InputError("blocks do not cover every atom");
  return normalized(ring, std::move(kept));
}

std::uint64_t StepElem::code_at(std::size_t atom) const {
  if (atom >= ring_.atom_count()) throw InputError("atom index out of range");
  for (const auto& b : blocks_)
    if (b.part.test(atom)) return b.value;
  throw InputError("malformed element");  // unreachable for normalized elements
}

std::vector<std::uint64_t> StepElem::values() const {
  std::vector<std::uint64_t> out(ring_.atom_count(), 0);
  for (const auto& b : blocks_)
    for (auto j : b.part.atoms()) out[j] = b.value;
  return out;
}

BoolElem StepElem::support() const {
  BoolElem s(ring_.bool_ring());
  for (const auto& b : blocks_)
    if (b.value != 0) s |= b.part;
  return s;
}

BoolElem StepElem::level_set(std::uint64_t code) const {
  for (const auto& b : blocks_)
    if (b.value == code) return b.part;
  return ring_.bool_ring().zero();
}

bool StepElem::is_idempotent() const noexcept {
  for (const auto& b : blocks_)
    if (b.value > 1) return false;
  return true;
}

std::optional<std::uint64_t> StepElem::scalar_value() const noexcept {
  if (blocks_.size() == 1) return blocks_.front().value;
  return std::nullopt;
}

template <class Op>
StepElem combine(const StepElem& x, const StepElem& y, Op op) {
  if (!(x.ring_ == y.ring_))
    throw InputError("mixed rings: " + x.ring_.to_string() + " and " + y.ring_.to_string());
  std::vector<Block> cells;
  cells.reserve(x.blocks_.size() * y.blocks_.size());
  for (const auto& bx : x.blocks_) {
    for (const auto& by : y.blocks_) {
      if (y.blocks_.size() == 1) {
        cells.push_back(Block{bx.part, op(bx.value, by.value)});
        continue;
      }
      if (x.blocks_.size() == 1) {
        cells.push_back(Block{by.part, op(bx.value, by.value)});
        continue;
      }
      BoolElem part = bx.part & by.part;
      if (part.is_zero()) continue;
      cells.push_back(Block{std::move(part), op(bx.value, by.value)});
    }
  }
  return StepElem::normalized(x.ring_, std::move(cells));
}

StepElem operator+(const StepElem& x, const StepElem& y) {
  const auto& f = x.ring_.field();
  return combine(x, y, [&f](std::uint64_t a, std::uint64_t b) { return f.add(a, b); });
}

StepElem operator-(const StepElem& x, const StepElem& y) {
  const auto& f = x.ring_.field();
  return combine(x, y, [&f](std::uint64_t a, std::uint64_t b) { return f.sub(a, b); });
}

StepElem operator*(const StepElem& x, const StepElem& y) {
  const auto& f = x.ring_.field();
  return combine(x, y, [&f](std::uint64_t a, std::uint64_t b) { return f.mul(a, b); });
}

StepElem operator-(const StepElem& x) {
  const auto& f = x.ring_.field();
  return x.map_values([&f](std::uint64_t a) { return f.neg(a); });
}

StepElem StepElem::pow(std::uint64_t e) const {
  const auto& f = ring_.field();
  return map_values([&f, e](std::uint64_t a) { return f.pow(a, e); });
}

bool operator==(const StepElem& a, const StepElem& b) noexcept {
  if (!(a.ring_ == b.ring_) || a.blocks_.size() != b.blocks_.size()) return false;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i)
    if (a.blocks_[i].value != b.blocks_[i].value || !(a.blocks_[i].part == b.blocks_[i].part)) return false;
  return true;
}

std::strong_ordering operator<=>(const StepElem& a, const StepElem& b) noexcept {
  const std::size_t n = std::min(a.blocks_.size(), b.blocks_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.blocks_[i].value <=> b.blocks_[i].value; c != 0) return c;
    if (a.blocks_[i].part < b.blocks_[i].part) return std::strong_ordering::less;
    if (b.blocks_[i].part < a.blocks_[i].part) return std::strong_ordering::greater;
  }
  return a.blocks_.size() <=> b.blocks_.size();
}

std::string StepElem::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += "; ";
    out += blocks_[i].part.to_string() + "->" + ring_.field().format(blocks_[i].value);
  }
  return out + "}";
}

std::size_t StepElem::hash() const noexcept {
  std::size_t h = 0x84222325u;
  for (const auto& b : blocks_) {
    h ^= std::hash<std::uint64_t>{}(b.value) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= b.part.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------

StepElem kb_arith(KBOp op, const StepElem& x, const std::optional<StepElem>& y) {
  switch (op) {
    case KBOp::add:
      if (!y) throw InputError("add needs two operands");
      return x + *y;
    case KBOp::mul:
      if (!y) throw InputError("mul needs two operands");
      return x * *y;
    case KBOp::neg:
      return -x;
  }
  throw InputError("unknown operation");
}

StepElem kb_e(const StepElem& x) { return x.map_values([](std::uint64_t a) -> std::uint64_t { return a ? 1 : 0; }); }

StepElem kb_quasi_inverse(const StepElem& x) {
  const auto& f = x.ring().field();
  return x.map_values([&f](std::uint64_t a) -> std::uint64_t { return a ? f.inv(a) : 0; });
}

FieldElem kb_eval_at_prime(const StepElem& x, std::size_t atom) {
  if (atom >= x.ring().atom_count())
    throw InputError("atom " + std::to_string(atom) + " out of range for " + x.ring().to_string());
  return x.ring().field().elem(x.code_at(atom));
}

StepElem kb_conv(const CfoiCombo& combo) {
  if (combo.coeffs.size() != combo.values.size()) throw InputError("coefficient and value counts differ");
  if (!br_cfoi_check(combo.coeffs)) throw InputError("coefficients are not a complete family of orthogonal idempotents");
  const KBRing& ring = combo.values.front().ring();
  std::vector<Block> cells;
  for (std::size_t i = 0; i < combo.coeffs.size(); ++i) {
    const auto& a = combo.coeffs[i];
    const auto& x = combo.values[i];
    if (!(x.ring() == ring)) throw InputError("combination values lie in different rings");
    if (!(a.ring() == ring.bool_ring())) throw InputError("coefficient from a different Boolean ring");
    if (a.is_zero()) continue;
    for (const auto& b : x.blocks()) {
      BoolElem part = b.part & a;
      if (!part.is_zero()) cells.push_back(Block{std::move(part), b.value});
    }
  }
  return StepElem::from_blocks(ring, std::move(cells));
}

NotAWitness::NotAWitness(std::size_t factor, std::size_t atom, std::string value)
    : InputError("generators do not reach value " + value + " at atom " + std::to_string(atom) +
                 (factor ? " of factor " + std::to_string(factor) : std::string())),
      factor_(factor),
      atom_(atom) {}

std::vector<BoolElem> kb_extract_coeffs(const StepElem& x, std::size_t count,
                                        const std::function<const StepElem&(std::size_t)>& gen) {
  const KBRing& ring = x.ring();
  std::vector<BoolElem> coeffs;
  coeffs.reserve(count);
  BoolElem prefix = ring.bool_ring().one();  // b_1 ... b_{i-1}
  for (std::size_t k = 0; k < count; ++k) {
    const StepElem& xi = gen(k);
    if (!(xi.ring() == ring)) throw InputError("generator lies in a different ring");
    if (prefix.is_zero()) {
      coeffs.push_back(prefix);
      continue;
    }
    // 1 - b_i = 1 - e(x - x_i): atoms where x and x_i agree. Blocks of both are
    // sorted by value, so a merge finds the common values.
    BoolElem agree = ring.bool_ring().zero();
    const auto& bx = x.blocks();
    const auto& by = xi.blocks();
    for (std::size_t i = 0, j = 0; i < bx.size() && j < by.size();) {
      if (bx[i].value < by[j].value) {
        ++i;
      } else if (by[j].value < bx[i].value) {
        ++j;
      } else {
        agree |= bx[i++].part & by[j++].part;
      }
    }
    coeffs.push_back(agree & prefix);
    prefix &= agree.complement();
  }
  if (!prefix.is_zero()) {
    const std::size_t atom = prefix.first_atom();
    throw NotAWitness(0, atom, ring.field().format(x.code_at(atom)));
  }
  return coeffs;
}

CfoiCombo kb_conv_extract(const StepElem& x, std::span<const StepElem> gens) {
  CfoiCombo out;
  out.coeffs = kb_extract_coeffs(x, gens.size(), [&](std::size_t k) -> const StepElem& { return gens[k]; });
  out.values.assign(gens.begin(), gens.end());
  return out;
}

std::vector<StepElem> kb_scalars(const KBRing& ring, std::span<const std::uint64_t> codes) {
  std::vector<StepElem> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back(ring.scalar(c));
  return out;
}

}  // namespace cfgring
