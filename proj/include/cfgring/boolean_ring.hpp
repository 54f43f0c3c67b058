#pragma once

// Finite Boolean rings, presented as the full powerset algebra on an indexed
// atom set. Sum is symmetric difference, product is intersection. Every
// finite Boolean ring is isomorphic to one of these, so the atom count is
// the whole invariant.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace cfgring {

inline constexpr std::size_t kMaxAtoms = std::size_t{1} << 20;

class BoolElem;

class BooleanRing {
 public:
  /// Throws InputError unless 1 <= atoms <= kMaxAtoms.
  explicit BooleanRing(std::size_t atoms);

  std::size_t atom_count() const noexcept { return atoms_; }
  std::size_t word_count() const noexcept { return (atoms_ + 63) / 64; }

  BoolElem zero() const;
  BoolElem one() const;
  BoolElem atom(std::size_t j) const;
  BoolElem from_atoms(std::span<const std::size_t> atoms) const;

  /// "B(atoms=N)".
  std::string to_string() const;
  /// "[0,2,5]", "[all]" or "[]".
  BoolElem parse_element(std::string_view text) const;

  friend bool operator==(const BooleanRing&, const BooleanRing&) noexcept = default;

 private:
  std::size_t atoms_;
};

class BoolElem {
 public:
  explicit BoolElem(const BooleanRing& ring);  // zero

  const BooleanRing& ring() const noexcept { return ring_; }
  std::span<const std::uint64_t> words() const noexcept { return {words_.data(), words_.size()}; }

  bool test(std::size_t atom) const;
  void set(std::size_t atom, bool value = true);
  /// Sets atoms [lo, hi).
  void set_range(std::size_t lo, std::size_t hi);
  std::size_t count() const noexcept;
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// Sorted atom indices.
  std::vector<std::size_t> atoms() const;
  /// Least atom, or atom_count() when empty.
  std::size_t first_atom() const noexcept;
  bool intersects(const BoolElem& other) const;

  BoolElem complement() const;
  BoolElem& operator^=(const BoolElem& other);
  BoolElem& operator&=(const BoolElem& other);
  BoolElem& operator|=(const BoolElem& other);

  friend BoolElem operator^(BoolElem a, const BoolElem& b) { return a ^= b; }
  friend BoolElem operator&(BoolElem a, const BoolElem& b) { return a &= b; }
  friend BoolElem operator|(BoolElem a, const BoolElem& b) { return a |= b; }

  /// Subset test, a <= b iff aB is contained in bB.
  bool leq(const BoolElem& other) const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const BoolElem& a, const BoolElem& b) noexcept {
    return a.ring_ == b.ring_ && a.words_ == b.words_;
  }
  /// Total order: compares the atom bit vectors word by word.
  friend bool operator<(const BoolElem& a, const BoolElem& b) noexcept { return a.words_ < b.words_; }

 private:
  void require_same(const BoolElem& other) const;
  BooleanRing ring_;
  boost::container::small_vector<std::uint64_t, 1> words_;  // one word covers 64 atoms
};

// Named forms of the ring operations. All throw InputError on mixed owners.
BoolElem br_sum(const BoolElem& a, const BoolElem& b);
BoolElem br_prod(const BoolElem& a, const BoolElem& b);
BoolElem br_complement(const BoolElem& a);
bool br_leq(const BoolElem& a, const BoolElem& b);

/// Complete family of orthogonal idempotents: pairwise disjoint with union
/// the full atom set. Zero members are allowed; an empty list is not a c.f.o.i.
bool br_cfoi_check(std::span<const BoolElem> family);

/// The prime ideal {x : atom not in x}. In a finite Boolean ring these are
/// all the primes and they are maximal.
struct PrimeIdeal {
  std::size_t atom;
  bool contains(const BoolElem& x) const { return !x.test(atom); }
};

std::vector<PrimeIdeal> br_primes(const BooleanRing& ring);

}  // namespace cfgring
