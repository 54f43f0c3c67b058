#include "cfgring/boolean_ring.hpp"

#include <bit>
#include <cctype>

#include "cfgring/errors.hpp"

namespace cfgring {

BooleanRing::BooleanRing(std::size_t atoms) : atoms_(atoms) {
  if (atoms == 0) throw InputError("a Boolean ring needs at least one atom");
  if (atoms > kMaxAtoms)
    throw InputError("atom count " + std::to_string(atoms) + " exceeds the cap " + std::to_string(kMaxAtoms));
}

BoolElem BooleanRing::zero() const { return BoolElem(*this); }

BoolElem BooleanRing::one() const { return BoolElem(*this).complement(); }

BoolElem BooleanRing::atom(std::size_t j) const {
  BoolElem e(*this);
  e.set(j);
  return e;
}

BoolElem BooleanRing::from_atoms(std::span<const std::size_t> atoms) const {
  BoolElem e(*this);
  for (auto j : atoms) e.set(j);
  return e;
}

std::string BooleanRing::to_string() const { return "B(atoms=" + std::to_string(atoms_) + ")"; }

BoolElem BooleanRing::parse_element(std::string_view text) const {
  const std::string s(text);
  if (s == "[all]") return one();
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError(s, 0, "expected an atom list like [0,2]");
  BoolElem e(*this);
  if (s == "[]") return e;
  std::size_t pos = 1;
  for (;;) {
    const std::size_t start = pos;
    std::size_t v = 0;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) throw ParseError(s, pos, "expected atom index");
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<std::size_t>(s[pos++] - '0');
      if (v >= atoms_) throw ParseError(s, start, "atom index out of range for " + to_string());
    }
    if (e.test(v)) throw ParseError(s, start, "repeated atom");
    e.set(v);
    if (s[pos] == ']') {
      if (pos + 1 != s.size()) throw ParseError(s, pos + 1, "trailing characters");
      break;
    }
    if (s[pos] != ',') throw ParseError(s, pos, "expected ',' or ']'");
    ++pos;
  }
  return e;
}

BoolElem::BoolElem(const BooleanRing& ring) : ring_(ring), words_(ring.word_count(), 0) {}

bool BoolElem::test(std::size_t atom) const {
  if (atom >= ring_.atom_count()) throw InputError("atom index out of range");
  return (words_[atom / 64] >> (atom % 64)) & 1u;
}

void BoolElem::set(std::size_t atom, bool value) {
  if (atom >= ring_.atom_count()) throw InputError("atom index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (atom % 64);
  if (value)
    words_[atom / 64] |= bit;
  else
    words_[atom / 64] &= ~bit;
}

void BoolElem::set_range(std::size_t lo, std::size_t hi) {
  if (hi > ring_.atom_count() || lo > hi) throw InputError("atom range out of bounds");
  while (lo < hi && lo % 64) set(lo++);
  while (lo + 64 <= hi) {
    words_[lo / 64] = ~std::uint64_t{0};
    lo += 64;
  }
  while (lo < hi) set(lo++);
}

std::size_t BoolElem::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BoolElem::is_zero() const noexcept {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool BoolElem::is_one() const noexcept { return count() == ring_.atom_count(); }

std::vector<std::size_t> BoolElem::atoms() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t BoolElem::first_atom() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  return ring_.atom_count();
}

bool BoolElem::intersects(const BoolElem& other) const {
  require_same(other);
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & other.words_[w]) return true;
  return false;
}

BoolElem BoolElem::complement() const {
  BoolElem r(*this);
  for (auto& w : r.words_) w = ~w;
  const std::size_t tail = ring_.atom_count() % 64;
  if (tail) r.words_.back() &= (std::uint64_t{1} << tail) - 1;
  return r;
}

BoolElem& BoolElem::operator^=(const BoolElem& other) {
  require_same(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BoolElem& BoolElem::operator&=(const BoolElem& other) {
  require_same(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

BoolElem& BoolElem::operator|=(const BoolElem& other) {
  require_same(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

bool BoolElem::leq(const BoolElem& other) const {
  require_same(other);
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

std::string BoolElem::to_string() const {
  if (is_one()) return "[all]";
  std::string out = "[";
  bool first = true;
  for (auto a : atoms()) {
    if (!first) out += ',';
    out += std::to_string(a);
    first = false;
  }
  return out + "]";
}

std::size_t BoolElem::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ ring_.atom_count();
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

void BoolElem::require_same(const BoolElem& other) const {
  if (!(ring_ == other.ring_))
    throw InputError("mixed Boolean rings: " + ring_.to_string() + " and " + other.ring_.to_string());
}

BoolElem br_sum(const BoolElem& a, const BoolElem& b) { return a ^ b; }
BoolElem br_prod(const BoolElem& a, const BoolElem& b) { return a & b; }
BoolElem br_complement(const BoolElem& a) { return a.complement(); }
bool br_leq(const BoolElem& a, const BoolElem& b) { return a.leq(b); }

bool br_cfoi_check(std::span<const BoolElem> family) {
  if (family.empty()) return false;
  BoolElem acc(family.front().ring());
  for (const auto& a : family) {
    if (!(a.ring() == acc.ring())) return false;
    if (acc.intersects(a)) return false;
    acc |= a;
  }
  return acc.is_one();
}

std::vector<PrimeIdeal> br_primes(const BooleanRing& ring) {
  std::vector<PrimeIdeal> out;
  out.reserve(ring.atom_count());
  for (std::size_t j = 0; j < ring.atom_count(); ++j) out.push_back(PrimeIdeal{j});
  return out;
}

}  // namespace cfgring
