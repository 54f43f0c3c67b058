#pragma once

// Builders for the standard examples: realizing an assignment of finite
// fields to the atoms of a finite Boolean ring, the tower ring whose
// quotients are finite but unbounded, and the GF(4) sequence ring with a
// contractive map that is not polynomial.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfgring/maps.hpp"
#include "cfgring/structure.hpp"

namespace cfgring {

// ---------------------------------------------------------------------------
// Field assignments

struct FieldAssignment {
  /// assign[j] is the field at atom j.
  std::vector<FiniteField> assign;
};

struct VraciuReport {
  ProductRing ring;
  /// (factor, local atom) of each assigned atom.
  std::vector<std::pair<std::size_t, std::size_t>> location;
  RingSignature signature;
  std::size_t idempotent_atoms = 0;
  std::vector<std::uint64_t> quotient_sizes;  // by assigned atom
  bool ok = false;
  std::string to_string() const;
};

/// One factor per distinct field (ordered by (p, n)); throws InputError on
/// an empty or mixed-characteristic assignment.
VraciuReport vraciu_build(const FieldAssignment& fa);

// ---------------------------------------------------------------------------
// Tower ring

/// Atom cap per characteristic: the universe GF(q^(2^N)) must stay at most
/// 2^20 elements, so N <= 4 for q = 2 and N <= 3 for q = 3.
std::size_t tower_max_atoms(std::uint64_t q);

class TowerRing {
 public:
  /// q in {2, 3}; 1 <= N <= tower_max_atoms(q).
  static TowerRing build(std::uint64_t q, std::size_t N);

  std::uint64_t q() const noexcept { return q_; }
  std::size_t atoms() const noexcept { return N_; }
  /// F_1 .. F_{N+1}, degrees 1, 2, 4, ..., 2^N (index 0 is F_1).
  const std::vector<FiniteField>& tower() const noexcept { return tower_; }
  const FiniteField& universe() const { return tower_.back(); }
  /// Elements are step functions atoms -> universe.
  const KBRing& ambient() const noexcept { return ambient_; }
  /// Universe codes of F_i (1-based i), sorted.
  const std::vector<std::uint64_t>& subfield(std::size_t i) const { return subfield_.at(i - 1); }
  bool in_subfield(std::size_t i, std::uint64_t code) const { return member_of_.at(i - 1).at(code); }
  /// I_i: subsets of atoms {i, ..., N} (1-based), as its top element.
  BoolElem ideal_top(std::size_t i) const;

  /// For every i, the atoms where u takes a value outside F_i lie in I_i.
  bool member(const StepElem& u) const;
  /// The first i violating the condition, if any.
  std::optional<std::size_t> violated_level(const StepElem& u) const;
  /// u(j) in F_{j+1} at every atom j (1-based).
  bool member_normal_form(const StepElem& u) const;

  /// Member with uniformly random value at every atom.
  StepElem random_member(std::mt19937_64& rng) const;
  /// Arbitrary step function on the universe.
  StepElem random_element(std::mt19937_64& rng) const;

 private:
  TowerRing(std::uint64_t q, std::size_t N, std::vector<FiniteField> tower, KBRing ambient);
  std::uint64_t q_;
  std::size_t N_;
  std::vector<FiniteField> tower_;
  KBRing ambient_;
  std::vector<std::vector<std::uint64_t>> subfield_;
  std::vector<std::vector<bool>> member_of_;
};

struct TowerReport {
  std::uint64_t q = 0;
  std::size_t N = 0;
  bool embeddings_coherent = false;
  bool membership_agrees = false;
  bool membership_exhaustive = false;
  std::uint64_t membership_checked = 0;
  std::uint64_t membership_members = 0;
  bool closure = false;
  bool closure_exhaustive = false;
  std::uint64_t closure_pairs = 0;
  std::vector<std::uint64_t> quotient_sizes;  // by atom
  std::uint64_t max_quotient = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  std::string to_string() const;
};

struct TowerOptions {
  /// Exhaustive checks while the count of cases stays under these.
  std::uint64_t membership_exhaustive_cap = 1 << 16;
  std::uint64_t closure_exhaustive_cap = 1 << 16;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
};

TowerReport tower_verify(const TowerRing& tr, const TowerOptions& opts = {});

/// True when the maximal quotient size strictly increases along the list.
bool tower_growth(std::span<const TowerReport> reports);

// ---------------------------------------------------------------------------
// GF(4) kernel and sequence ring

struct Gf4KernelReport {
  bool relation_holds = false;       // t(t+1)(t^2+t+1) = 0 on GF(4)
  std::vector<std::uint64_t> h;      // h(t) = t(t+1)(t+g) at codes 0, 1, g, g+1
  bool h_as_stated = false;          // h(g) = 0, h(g+1) != 0
  std::size_t candidates = 0;        // polynomials over {0,1} of degree <= 3
  std::size_t rejected = 0;
  std::vector<std::size_t> mismatches;  // per candidate, indexed by coefficient bits
  bool ok() const { return relation_holds && h_as_stated && candidates == 16 && rejected == 16; }
  std::string to_string() const;
};

Gf4KernelReport gf4_kernel_check();

struct Gf4SequenceReport {
  std::size_t N = 0;
  std::size_t k = 0;
  std::string ring;
  std::uint64_t ring_size = 0;
  std::vector<std::uint64_t> quotient_sizes;
  bool quotients_bounded = false;    // all <= 4
  bool relation_holds = false;       // x(x+1)(x^2+x+1) = 0 on the ring
  bool maps_into = false;            // f(A) lies in A
  bool contractive = false;
  bool h_on_g = false;               // f(g, ..., g) restricted agrees with the h table
  /// Experiment: the truncated map has a polynomial witness.
  std::optional<PolyMap> truncation_witness;
  bool ok() const { return quotients_bounded && relation_holds && maps_into && contractive && h_on_g; }
  std::string to_string() const;
};

/// A_{N,k} = GF(4)^[B_k] x GF(2)^[B_(N-k)] inside GF(4)^[B_N], with
/// f(x) = x(x+1)(x+g) computed in the ambient. Requires 1 <= k < N <= 6.
Gf4SequenceReport gf4_sequence_demo(std::size_t N, std::size_t k);

}  // namespace cfgring
