#pragma once

// Deciding whether a finite generator list makes an ambient product a
// CFG-ring, i.e. whether every quotient field is reached by the residues of
// the generators.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfgring/product_ring.hpp"

namespace cfgring {

struct UncoveredResidue {
  std::size_t factor;
  std::size_t atom;
  std::uint64_t missing;  // field code
};

struct CfgCheckOptions {
  /// Rings up to this size get the exhaustive product check.
  std::uint64_t exhaustive_cap = 4096;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  /// Maximum number of uncovered triples listed in the report.
  std::size_t list_limit = 64;
};

struct CfgReport {
  bool holds = false;  // residue coverage at every prime
  std::uint64_t uncovered_atoms = 0;
  std::vector<UncoveredResidue> uncovered;  // truncated to list_limit

  bool exhaustive = false;
  std::uint64_t product_checked = 0;
  /// True when prod (x - x_i) vanished on every checked x.
  bool product_vanishes = false;
  std::optional<ProductElem> product_counterexample;

  /// The two conditions gave the same answer on what was checked. With a
  /// sampled product check a "holds = false" verdict may still agree
  /// vacuously when no sample hit an uncovered atom.
  bool consistent() const { return holds == product_vanishes || (!holds && !exhaustive); }
  std::string to_string(const ProductRing& ring) const;
};

/// Residue coverage, decided by partition refinement of the atoms by the
/// generators' values; cost is linear in atoms times generators.
bool residues_cover(const ProductRing& ring, std::span<const ProductElem> gens);

/// prod_i (x - x_i).
ProductElem vanishing_product(const ProductElem& x, std::span<const ProductElem> gens);

/// First element of `elems` whose extraction fails or does not reconstruct x.
std::optional<ProductElem> conv_extract_counterexample(std::span<const ProductElem> elems,
                                                       std::span<const ProductElem> gens);

CfgReport cfg_witness_check(const ProductRing& ring, std::span<const ProductElem> gens,
                            const CfgCheckOptions& opts = {});

}  // namespace cfgring
