#pragma once

// Unary maps on product rings: polynomial maps, explicit tables on small
// rings, contractivity, iteration orbits, and polynomial witnesses for
// contractive maps.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfgring/product_ring.hpp"

namespace cfgring {

inline constexpr std::uint64_t kDefaultTableCap = 4096;
inline constexpr std::uint64_t kDefaultOrbitCap = 100000;

class PolyMap {
 public:
  /// Trailing zero coefficients are dropped; the zero polynomial keeps one.
  PolyMap(ProductRing ring, std::vector<ProductElem> coeffs);

  const ProductRing& ring() const noexcept { return ring_; }
  const std::vector<ProductElem>& coeffs() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }

  /// Horner evaluation.
  ProductElem operator()(const ProductElem& x) const;

  /// "poly[c0; c1; ...]".
  std::string to_string() const;
  static PolyMap parse(const ProductRing& ring, std::string_view text);

  /// Coefficient equality, not functional equality.
  friend bool operator==(const PolyMap& a, const PolyMap& b) { return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_; }

 private:
  ProductRing ring_;
  std::vector<ProductElem> coeffs_;
};

PolyMap parse_poly(const ProductRing& ring, Cursor& cur);
ProductElem poly_eval(const PolyMap& f, const ProductElem& x);

/// A ring small enough to enumerate, with every element's per-atom digits.
/// Element i has global-atom values given by the mixed-radix digits of i.
class EnumeratedRing {
 public:
  EnumeratedRing(ProductRing ring, std::uint64_t cap = kDefaultTableCap);

  const ProductRing& ring() const noexcept { return ring_; }
  std::uint64_t size() const noexcept { return size_; }
  std::size_t atoms() const noexcept { return radix_.size(); }
  std::uint64_t radix(std::size_t atom) const { return radix_[atom]; }

  const ProductElem& element(std::uint64_t i) const { return elements_.at(i); }
  std::uint64_t index_of(const ProductElem& x) const { return ring_.index_of(x); }
  std::uint32_t digit(std::uint64_t i, std::size_t atom) const { return digits_[i * radix_.size() + atom]; }

  /// Bit a set iff elements i and j differ at atom a: the support of i - j.
  std::uint64_t diff_mask(std::uint64_t i, std::uint64_t j) const;
  /// The element equal to i on the atoms of `mask` and to j elsewhere.
  std::uint64_t splice(std::uint64_t mask, std::uint64_t i, std::uint64_t j) const;
  /// Element index with the given per-atom digits.
  std::uint64_t from_digits(std::span<const std::uint32_t> digits) const;

 private:
  ProductRing ring_;
  std::uint64_t size_;
  std::vector<std::uint64_t> radix_;
  std::vector<std::uint64_t> weight_;
  std::vector<std::uint32_t> digits_;
  std::vector<ProductElem> elements_;
};

/// Total self-map of a small ring, stored as image indices.
class MapTable {
 public:
  MapTable(std::shared_ptr<const EnumeratedRing> ring, std::vector<std::uint64_t> images);
  static MapTable from_function(std::shared_ptr<const EnumeratedRing> ring,
                                const std::function<ProductElem(const ProductElem&)>& f);
  static MapTable from_poly(std::shared_ptr<const EnumeratedRing> ring, const PolyMap& f);
  static MapTable identity(std::shared_ptr<const EnumeratedRing> ring);

  const EnumeratedRing& ring() const noexcept { return *ring_; }
  std::shared_ptr<const EnumeratedRing> ring_ptr() const noexcept { return ring_; }
  const std::vector<std::uint64_t>& images() const noexcept { return images_; }
  std::uint64_t image(std::uint64_t i) const { return images_.at(i); }
  ProductElem operator()(const ProductElem& x) const;

  /// (this o g)(x) = this(g(x)).
  MapTable after(const MapTable& g) const;

  /// "map on <ring>" followed by one "x -> f(x)" line per element, in
  /// index order.
  std::string to_text() const;
  /// Accepts the lines in any order; every element must appear once.
  static MapTable parse(std::string_view text, std::uint64_t cap = kDefaultTableCap);

  friend bool operator==(const MapTable& a, const MapTable& b) {
    return a.images_ == b.images_ && a.ring_->ring() == b.ring_->ring();
  }

 private:
  std::shared_ptr<const EnumeratedRing> ring_;
  std::vector<std::uint64_t> images_;
};

std::shared_ptr<const EnumeratedRing> enumerate(const ProductRing& ring, std::uint64_t cap = kDefaultTableCap);

/// The support map x -> e(x).
MapTable e_map_table(std::shared_ptr<const EnumeratedRing> ring);

struct ContractiveResult {
  bool holds = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;  // element indices x, y
};

/// e(f(x) - f(y)) <= e(x - y) over every pair.
ContractiveResult is_contractive(const MapTable& f);

struct ConvCheckOptions {
  /// Exhaustive two-block check while 2^atoms * N^2 stays under this.
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 26;
  std::uint64_t samples = std::uint64_t{1} << 20;
  std::uint64_t seed = 1;
  /// The all-c.f.o.i. check runs on rings with at most this many atoms,
  /// while the number of cases stays under full_limit.
  std::size_t full_max_atoms = 3;
  std::uint64_t full_limit = std::uint64_t{1} << 24;
};

struct ConvResult {
  bool holds = true;
  bool two_block_exhaustive = false;
  std::uint64_t two_block_checked = 0;
  bool full_checked = false;
  std::uint64_t full_checked_cases = 0;
  /// Violating combination: per-atom block labels and the block values.
  std::optional<std::pair<std::vector<std::uint32_t>, std::vector<std::uint64_t>>> witness;
};

/// f(sum a_i x_i) = sum a_i f(x_i).
ConvResult commutes_with_conv(const MapTable& f, const ConvCheckOptions& opts = {});

enum class OrbitMethod { table, matrix };

struct IterationCertificate {
  OrbitMethod method = OrbitMethod::table;
  std::vector<ProductElem> gens;
  /// matrices[k][l][i]: coefficient of x_l in f^(k+1)(x_i). Only the first
  /// kStoredMatrices are kept.
  std::vector<std::vector<std::vector<ProductElem>>> matrices;
  /// Atoms of the Boolean ring generated by the entries of the first matrix.
  std::size_t boolean_atoms = 0;
  std::uint64_t orbit_size = 0;  // distinct maps f^k, k >= 1
  std::uint64_t tail = 0;
  std::uint64_t period = 0;
  std::string to_string() const;
  static constexpr std::size_t kStoredMatrices = 16;
};

/// Cycle detection on composed tables.
IterationCertificate iteration_orbit_table(const MapTable& f, std::uint64_t cap = kDefaultOrbitCap);

/// Coefficient-matrix iteration. `gens` must cover every quotient and f
/// must commute with convex combinations; both are checked (the latter only
/// for tables). Works on rings too large to enumerate when f is a PolyMap.
IterationCertificate iteration_orbit_matrix(const PolyMap& f, std::span<const ProductElem> gens,
                                            std::uint64_t cap = kDefaultOrbitCap);
IterationCertificate iteration_orbit_matrix(const MapTable& f, std::span<const ProductElem> gens,
                                            std::uint64_t cap = kDefaultOrbitCap);

struct EExponent {
  std::vector<std::uint64_t> quotient_sizes;  // distinct field orders, ascending
  std::uint64_t m = 1;                        // prod (n_i - 1)
  bool verified = false;
  bool exhaustive = false;
  std::uint64_t checked = 0;
  std::optional<ProductElem> counterexample;
};

/// m with e(x) = x^m; checked on every element up to `cap`, else on
/// `samples` random elements.
EExponent e_poly_exponent(const ProductRing& ring, std::uint64_t cap = kDefaultTableCap,
                          std::uint64_t samples = 1000, std::uint64_t seed = 1);

struct QuotientBound {
  std::uint64_t degree = 0;
  std::uint64_t bound = 0;  // 2k
  /// Factors whose field order is not below the bound.
  std::vector<std::pair<std::size_t, std::uint64_t>> violations;
  /// Every violation sits exactly on the bound with |K| = 2, k = 1: the
  /// Boolean case, where only the non-strict inequality can hold.
  bool boolean_edge = false;
  bool holds() const { return violations.empty(); }
};

QuotientBound quotient_bound_from_degree(const ProductRing& ring, std::uint64_t k);

/// Blockwise Lagrange interpolation through f's values at the embedded field
/// scalars. Throws InputError for non-contractive f and std::logic_error if
/// the result does not reproduce f.
PolyMap contractive_to_poly(const MapTable& f);

struct PolynomialResult {
  bool holds = false;
  std::optional<PolyMap> witness;
  ContractiveResult contractive;
};

PolynomialResult is_polynomial(const MapTable& f);

/// Brute force over every coefficient tuple of degree below the largest
/// field order; refuses rings with more than `max_size` elements.
std::optional<PolyMap> polynomial_oracle(const MapTable& f, std::uint64_t max_size = 16);

/// The contractive maps, built as per-atom functions K -> K. Throws
/// CapExceeded when there are more than `cap` of them.
std::vector<MapTable> enumerate_contractive(std::shared_ptr<const EnumeratedRing> ring, std::uint64_t cap = 1'000'000);

}  // namespace cfgring
