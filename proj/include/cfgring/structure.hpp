#pragma once

// The structure theorem for presented CFG-rings: a ring A = conv(T), T the
// subring generated by finitely many elements of an ambient product, is
// K_1^[B_1] x ... x K_r^[B_r] with pairwise non-isomorphic K_i, and the
// association K_i -> |atoms(B_i)| is a complete isomorphism invariant.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfgring/product_ring.hpp"

namespace cfgring {

inline constexpr std::uint64_t kDefaultSubringCap = 1'000'000;

/// A = conv(T), T generated by gens, 0 and 1; conv uses every idempotent
/// of the ambient.
struct SubringPresentation {
  ProductRing ambient;
  std::vector<ProductElem> gens;
};

/// Closure of gens, 0, 1 and -1 under + and *, sorted canonically. Throws
/// CapExceeded when more than `cap` elements appear.
std::vector<ProductElem> generated_subring(const SubringPresentation& pres, std::uint64_t cap = kDefaultSubringCap);

struct FieldClass {
  std::uint64_t p;
  unsigned n;
  std::uint64_t order() const;
  std::string to_string() const;  // "GF(q)"
  friend auto operator<=>(const FieldClass&, const FieldClass&) = default;
};

struct FieldComponent {
  ProductElem idempotent;  // primitive idempotent of T
  FieldClass field;        // T * idempotent
};

/// Splits a finite reduced ring T (given as its element list, closed under
/// the ring operations) into fields. The idempotents come back sorted and
/// form a c.f.o.i. Throws InputError if T is not closed or not reduced.
std::vector<FieldComponent> decompose_finite_reduced(std::span<const ProductElem> T);

class RingSignature {
 public:
  RingSignature() = default;
  /// Adds `atoms` to the entry of `field` (the merge of equal fields).
  void add(FieldClass field, std::uint64_t atoms);

  const std::map<FieldClass, std::uint64_t>& entries() const noexcept { return entries_; }
  std::uint64_t total_atoms() const;

  /// "sig{GF(2):3, GF(4):1}", sorted by (p, n).
  std::string to_string() const;
  static RingSignature parse(std::string_view text);

  friend bool operator==(const RingSignature&, const RingSignature&) = default;

 private:
  std::map<FieldClass, std::uint64_t> entries_;
};

RingSignature parse_signature(Cursor& cur);

struct DecompositionBlock {
  FieldComponent component;
  /// Ambient atoms where the idempotent is 1, one set per ambient factor.
  std::vector<BoolElem> atoms;
  std::uint64_t atom_count = 0;
};

struct Decomposition {
  RingSignature signature;
  std::uint64_t subring_size = 0;
  std::vector<DecompositionBlock> blocks;
  std::string witness_text() const;
};

Decomposition structure_decompose(const SubringPresentation& pres, std::uint64_t cap = kDefaultSubringCap);

bool iso_test(const SubringPresentation& a, const SubringPresentation& b, std::uint64_t cap = kDefaultSubringCap);

/// The ambient with one factor GF(p^n)^[B(atoms)] per signature entry.
ProductRing ring_from_signature(const RingSignature& sig);

/// Signature of the full ambient (each factor contributes its atom count).
RingSignature ambient_signature(const ProductRing& ring);

/// lcm of the factor characteristics (a squarefree product of primes).
std::uint64_t ring_char(const ProductRing& ring);
std::uint64_t ring_char(const SubringPresentation& pres);

struct CharBlock {
  std::uint64_t prime;
  ProductElem idempotent;          // 1 - e(prime * 1)
  std::vector<std::size_t> factors;  // ambient factors of this characteristic
  RingSignature signature;
};

std::vector<CharBlock> char_decompose(const ProductRing& ring);

}  // namespace cfgring
