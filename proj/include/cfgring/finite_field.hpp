#pragma once

// Exact arithmetic in GF(p^n).
//
// Elements are coefficient vectors over Z/p in the power basis of a fixed
// generator g (the class of x modulo the field's modulus). Internally every
// element is packed into a single integer code
//
//     code = c_0 + c_1 p + c_2 p^2 + ... + c_{n-1} p^{n-1}
//
// so that the canonical element order is the base-p counter with the constant
// term varying fastest. All higher modules store field values as codes.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfgring {

inline constexpr unsigned kMaxFieldDegree = 16;
/// Fields up to this order use exp/log tables; larger ones multiply by
/// polynomial reduction and invert by exponentiation.
inline constexpr std::uint64_t kTableFieldOrder = std::uint64_t{1} << 16;
/// Largest target field for which embeddings are computed (root search
/// enumerates the target).
inline constexpr std::uint64_t kMaxEmbeddingTarget = std::uint64_t{1} << 20;

class FieldElem;

class FiniteField {
 public:
  /// ff_make. Rejects non-prime p, n outside [1, kMaxFieldDegree], p >= 2^31
  /// and orders p^n >= 2^62.
  static FiniteField make(std::uint64_t p, unsigned n);

  std::uint64_t characteristic() const noexcept;
  unsigned degree() const noexcept;
  std::uint64_t order() const noexcept;
  /// Monic modulus, constant term first, length degree()+1.
  const std::vector<std::uint64_t>& modulus() const noexcept;

  // Arithmetic on codes. Codes must be < order().
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  /// Throws InputError for a == 0.
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// k * 1 for an integer k.
  std::uint64_t from_integer(std::int64_t k) const;

  std::vector<std::uint64_t> digits(std::uint64_t code) const;
  std::uint64_t from_digits(std::span<const std::uint64_t> coeffs) const;

  FieldElem elem(std::uint64_t code) const;
  FieldElem zero() const;
  FieldElem one() const;
  FieldElem generator() const;
  FieldElem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  /// Every element in canonical order. Throws CapExceeded above 2^20.
  std::vector<FieldElem> elements() const;

  /// "GF(q)".
  std::string to_string() const;
  /// g-polynomial text of an element code: "0", "1", "g", "g+1", "2g^2+1".
  std::string format(std::uint64_t code) const;
  std::uint64_t parse_code(std::string_view text) const;
  FieldElem parse(std::string_view text) const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) noexcept {
    return a.characteristic() == b.characteristic() && a.degree() == b.degree();
  }

 private:
  struct Data;
  explicit FiniteField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

class FieldElem {
 public:
  FieldElem(FiniteField field, std::uint64_t code);

  const FiniteField& field() const noexcept { return field_; }
  std::uint64_t code() const noexcept { return code_; }
  std::vector<std::uint64_t> coeffs() const { return field_.digits(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FieldElem inverse() const;
  FieldElem pow(std::uint64_t e) const;
  std::string to_string() const { return field_.format(code_); }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a);

  friend bool operator==(const FieldElem& a, const FieldElem& b) noexcept {
    return a.field_ == b.field_ && a.code_ == b.code_;
  }
  /// Canonical order within one field.
  friend std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b) noexcept {
    return a.code_ <=> b.code_;
  }

 private:
  FiniteField field_;
  std::uint64_t code_;
};

enum class FieldOp { add, mul, neg, inv };

/// Dispatching form of the field operations; `y` is required for add/mul.
FieldElem ff_arith(FieldOp op, const FieldElem& x, const std::optional<FieldElem>& y = {});

/// A fixed injective homomorphism GF(p^d) -> GF(p^n), d | n.
///
/// For a prime degree ratio the generator goes to the least root (in the
/// target's canonical order) of the source modulus. Composite ratios are
/// factored through the intermediate field of degree n/l, l the smallest
/// prime dividing n/d, so embeddings along a chain of such steps compose
/// exactly (towers of doubling degree in particular).
class FieldEmbedding {
 public:
  static FieldEmbedding make(const FiniteField& sub, const FiniteField& sup);

  const FiniteField& source() const noexcept { return source_; }
  const FiniteField& target() const noexcept { return target_; }
  std::uint64_t generator_image() const noexcept { return generator_image_; }

  std::uint64_t map_code(std::uint64_t code) const;
  FieldElem operator()(const FieldElem& x) const;
  /// Image of every source element, indexed by source code.
  const std::vector<std::uint64_t>& image_table() const noexcept { return table_; }

 private:
  FieldEmbedding(FiniteField sub, FiniteField sup, std::uint64_t gen_image);
  FiniteField source_;
  FiniteField target_;
  std::uint64_t generator_image_;
  std::vector<std::uint64_t> table_;
};

FieldElem ff_embed(const FiniteField& sub, const FiniteField& sup, const FieldElem& x);

/// Value of the polynomial with the given coefficient codes (constant first).
std::uint64_t ff_poly_eval(const FiniteField& field, std::span<const std::uint64_t> coeffs,
                           std::uint64_t x);

/// Coefficients (constant first, length q) of the Lagrange basis polynomial
/// that is 1 at `point` and 0 at every other element: -(X^q - X)/(X - point).
std::vector<std::uint64_t> ff_lagrange_basis(const FiniteField& field, std::uint64_t point);

/// Interpolant of degree < q through `values_by_code[c]` at every element c.
/// Trailing zeros are trimmed; the zero polynomial is returned as {0}.
std::vector<std::uint64_t> ff_lagrange_codes(const FiniteField& field,
                                             std::span<const std::uint64_t> values_by_code);

/// ff_lagrange on an association table; throws InputError unless the table
/// lists every element of `field` exactly once.
std::vector<FieldElem> ff_lagrange(const FiniteField& field,
                                   std::span<const std::pair<FieldElem, FieldElem>> table);

bool is_prime(std::uint64_t p) noexcept;

}  // namespace cfgring
