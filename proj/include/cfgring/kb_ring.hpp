#pragma once

// K^[B]: locally constant functions from the (finite, discrete) spectrum of B
// into a finite field K. An element is stored as a value-labelled partition
// of the atom set: parts are nonempty, pairwise disjoint and cover every
// atom; values are pairwise distinct; blocks are sorted by value code. That
// normal form makes equality structural and keeps an element's size bounded
// by the number of distinct values it takes, not by the atom count.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfgring/boolean_ring.hpp"
#include "cfgring/errors.hpp"
#include "cfgring/finite_field.hpp"

namespace cfgring {

class StepElem;
class Cursor;

class KBRing {
 public:
  KBRing(FiniteField field, BooleanRing bool_ring);

  const FiniteField& field() const noexcept { return field_; }
  const BooleanRing& bool_ring() const noexcept { return bool_ring_; }
  std::size_t atom_count() const noexcept { return bool_ring_.atom_count(); }

  StepElem zero() const;
  StepElem one() const;
  StepElem scalar(std::uint64_t code) const;
  StepElem scalar(const FieldElem& k) const;
  /// The {0,1}-valued element that is 1 exactly on `b`.
  StepElem idempotent(const BoolElem& b) const;
  /// Element taking value `values[j]` (a field code) at atom j.
  StepElem from_values(std::span<const std::uint64_t> values) const;

  /// q^atoms when it fits in 63 bits.
  std::optional<std::uint64_t> size() const;

  /// "GF(q)^[B(atoms=N)]".
  std::string to_string() const;
  /// "{[0,1]->g; [2]->1}".
  StepElem parse_element(std::string_view text) const;

  friend bool operator==(const KBRing& a, const KBRing& b) noexcept {
    return a.field_ == b.field_ && a.bool_ring_ == b.bool_ring_;
  }

 private:
  FiniteField field_;
  BooleanRing bool_ring_;
};

struct Block {
  BoolElem part;
  std::uint64_t value;
};

class StepElem {
 public:
  /// Normalizes: drops empty parts, merges parts with equal values, sorts.
  /// Throws InputError if the parts overlap or leave an atom uncovered.
  static StepElem from_blocks(const KBRing& ring, std::vector<Block> blocks);

  const KBRing& ring() const noexcept { return ring_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  std::uint64_t code_at(std::size_t atom) const;
  /// Per-atom value codes.
  std::vector<std::uint64_t> values() const;
  /// Atoms where the value is nonzero.
  BoolElem support() const;
  /// Atoms where the value equals `code` (possibly empty).
  BoolElem level_set(std::uint64_t code) const;

  bool is_zero() const noexcept { return blocks_.size() == 1 && blocks_.front().value == 0; }
  bool is_one() const noexcept { return blocks_.size() == 1 && blocks_.front().value == 1; }
  bool is_idempotent() const noexcept;
  std::optional<std::uint64_t> scalar_value() const noexcept;

  /// Applies a code -> code map at every atom.
  template <class F>
  StepElem map_values(F&& f) const {
    std::vector<Block> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(Block{b.part, f(b.value)});
    return normalized(ring_, std::move(out));
  }

  StepElem pow(std::uint64_t e) const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend StepElem operator+(const StepElem& x, const StepElem& y);
  friend StepElem operator-(const StepElem& x, const StepElem& y);
  friend StepElem operator*(const StepElem& x, const StepElem& y);
  friend StepElem operator-(const StepElem& x);

  friend bool operator==(const StepElem& a, const StepElem& b) noexcept;
  /// Canonical total order (value codes, then parts, block by block).
  friend std::strong_ordering operator<=>(const StepElem& a, const StepElem& b) noexcept;

 private:
  StepElem(KBRing ring, std::vector<Block> blocks) : ring_(std::move(ring)), blocks_(std::move(blocks)) {}
  // Merges equal values and sorts; parts must already form a partition.
  static StepElem normalized(const KBRing& ring, std::vector<Block> cells);
  template <class Op>
  friend StepElem combine(const StepElem& x, const StepElem& y, Op op);
  friend class KBRing;

  KBRing ring_;
  std::vector<Block> blocks_;
};

enum class KBOp { add, mul, neg };

StepElem kb_arith(KBOp op, const StepElem& x, const std::optional<StepElem>& y = {});

/// The support idempotent e(x): generates the same principal ideal as x.
StepElem kb_e(const StepElem& x);

/// x* with x x* x = x and x* x x* = x*: field inverse on the support, 0 off it.
StepElem kb_quasi_inverse(const StepElem& x);

/// Value of x modulo the prime ideal of `atom` (K^[B]/p is K).
FieldElem kb_eval_at_prime(const StepElem& x, std::size_t atom);

/// A convex combination sum a_i x_i with (a_i) a c.f.o.i.
struct CfoiCombo {
  std::vector<BoolElem> coeffs;
  std::vector<StepElem> values;
};

/// Evaluates the combination. Throws InputError if the coefficients are not a
/// c.f.o.i. or the lengths differ.
StepElem kb_conv(const CfoiCombo& combo);

/// Thrown by the extraction when some atom's value of x is not attained by
/// any generator at that atom.
class NotAWitness : public InputError {
 public:
  NotAWitness(std::size_t factor, std::size_t atom, std::string value);
  std::size_t factor() const noexcept { return factor_; }
  std::size_t atom() const noexcept { return atom_; }

 private:
  std::size_t factor_;
  std::size_t atom_;
};

/// Writes x as a convex combination of `gens` with the greedy first-match
/// coefficients b_i = e(x - x_i), a_i = (1 - b_i) b_1 ... b_{i-1}: a_i selects
/// the atoms where x first agrees with x_i. Coefficients come back in
/// generator order, zeros included.
CfoiCombo kb_conv_extract(const StepElem& x, std::span<const StepElem> gens);

/// The coefficients of kb_conv_extract alone, reading generator i as gen(i).
std::vector<BoolElem> kb_extract_coeffs(const StepElem& x, std::size_t count,
                                        const std::function<const StepElem&(std::size_t)>& gen);

/// Parses one element at the cursor (used by the composite grammars).
StepElem parse_step_elem(const KBRing& ring, Cursor& cur);

/// Scalars of the ring's field as constant elements.
std::vector<StepElem> kb_scalars(const KBRing& ring, std::span<const std::uint64_t> codes);

}  // namespace cfgring
