#pragma once

// Finite products K_1^[B_1] x ... x K_r^[B_r], the ambient of every
// CFG-ring computation. Operations are componentwise.
//
// Atoms of all factors are numbered globally (factor 0 first). For rings
// small enough to enumerate, element index i has per-atom value codes given
// by the mixed-radix digits of i, the first global atom varying fastest.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfgring/kb_ring.hpp"

namespace cfgring {

class ProductElem;

class ProductRing {
 public:
  explicit ProductRing(std::vector<KBRing> factors);
  ProductRing(const KBRing& single);  // NOLINT(google-explicit-constructor)

  const std::vector<KBRing>& factors() const noexcept { return *factors_; }
  std::size_t factor_count() const noexcept { return factors_->size(); }
  const KBRing& factor(std::size_t i) const { return factors_->at(i); }
  std::size_t total_atoms() const noexcept;
  /// (factor, local atom) of a global atom index.
  std::pair<std::size_t, std::size_t> locate(std::size_t global_atom) const;

  ProductElem zero() const;
  ProductElem one() const;
  /// k * 1.
  ProductElem integer(std::int64_t k) const;
  ProductElem from_parts(std::vector<StepElem> parts) const;
  /// `x` in factor i, zero elsewhere.
  ProductElem in_factor(std::size_t i, const StepElem& x) const;
  /// Idempotent with the given support in each factor.
  ProductElem idempotent(std::span<const BoolElem> supports) const;

  /// Number of elements when it fits in 62 bits.
  std::optional<std::uint64_t> size() const;
  ProductElem element_at(std::uint64_t index) const;
  std::uint64_t index_of(const ProductElem& x) const;
  /// All elements in index order; throws CapExceeded above `cap`.
  std::vector<ProductElem> elements(std::uint64_t cap) const;

  /// Factors joined by " x ", e.g. "GF(2)^[B(atoms=1)] x GF(3)^[B(atoms=2)]".
  std::string to_string() const;
  /// Also accepts a bare "GF(q)" factor as a one-atom factor.
  static ProductRing parse(std::string_view text);

  /// Single factor: "{...}". Several: "({...}, {...})". A bare field element
  /// such as "g+1" (or a bare component inside the tuple) denotes a scalar.
  ProductElem parse_element(std::string_view text) const;

  friend bool operator==(const ProductRing& a, const ProductRing& b) noexcept {
    return a.factors_ == b.factors_ || *a.factors_ == *b.factors_;
  }

 private:
  std::shared_ptr<const std::vector<KBRing>> factors_;
};

class ProductElem {
 public:
  const ProductRing& ring() const noexcept { return ring_; }
  const std::vector<StepElem>& parts() const noexcept { return parts_; }
  const StepElem& part(std::size_t i) const { return parts_.at(i); }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_idempotent() const noexcept;
  /// Per-global-atom value codes.
  std::vector<std::uint64_t> values() const;
  /// Value at (factor, local atom).
  std::uint64_t code_at(std::size_t factor, std::size_t atom) const { return parts_.at(factor).code_at(atom); }

  ProductElem pow(std::uint64_t e) const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend ProductElem operator+(const ProductElem& x, const ProductElem& y);
  friend ProductElem operator-(const ProductElem& x, const ProductElem& y);
  friend ProductElem operator*(const ProductElem& x, const ProductElem& y);
  friend ProductElem operator-(const ProductElem& x);

  friend bool operator==(const ProductElem& a, const ProductElem& b) noexcept { return a.parts_ == b.parts_; }
  friend std::strong_ordering operator<=>(const ProductElem& a, const ProductElem& b) noexcept;

 private:
  friend class ProductRing;
  ProductElem(ProductRing ring, std::vector<StepElem> parts) : ring_(std::move(ring)), parts_(std::move(parts)) {}
  ProductRing ring_;
  std::vector<StepElem> parts_;
};

struct ProductElemHash {
  std::size_t operator()(const ProductElem& x) const noexcept { return x.hash(); }
};

/// Support idempotent, componentwise.
ProductElem product_e(const ProductElem& x);
ProductElem product_quasi_inverse(const ProductElem& x);

/// A convex combination whose coefficients are idempotents of the product.
struct ProductCombo {
  std::vector<ProductElem> coeffs;
  std::vector<ProductElem> values;
};

bool product_cfoi_check(std::span<const ProductElem> family);
ProductElem product_conv(const ProductCombo& combo);
/// Componentwise greedy extraction (see kb_conv_extract). Throws NotAWitness
/// naming the first unreachable (factor, atom).
ProductCombo product_conv_extract(const ProductElem& x, std::span<const ProductElem> gens);

ProductElem parse_product_elem(const ProductRing& ring, Cursor& cur);

/// Uniform per-atom values on small factors; a few random interval blocks on
/// factors with more than 4096 atoms. Uses only raw engine output so streams
/// are reproducible across standard libraries.
ProductElem random_element(const ProductRing& ring, std::mt19937_64& rng);

/// The field generator of every non-prime factor, placed in its factor and
/// zero elsewhere. Together with 0 and 1 they present the whole ambient: the
/// conv of the subring they generate is everything.
std::vector<ProductElem> factor_generators(const ProductRing& ring);

/// n = max |K_f| elements; element i has the scalar with code i (or 0 when
/// i >= |K_f|) in factor f. Their residues cover every quotient field.
std::vector<ProductElem> covering_scalars(const ProductRing& ring);

}  // namespace cfgring
