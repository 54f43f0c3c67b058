#pragma once

// Glue between library objects and the naive oracles.

#include <cstdint>
#include <vector>

#include "cfgring/product_ring.hpp"
#include "oracle.hpp"

namespace testsupport {

inline oracle::AtomRing atom_ring(const cfgring::ProductRing& R) {
  oracle::AtomRing A;
  for (const auto& f : R.factors())
    for (std::size_t a = 0; a < f.atom_count(); ++a)
      A.at.emplace_back(f.field().characteristic(), f.field().degree());
  return A;
}

inline cfgring::ProductElem from_codes(const cfgring::ProductRing& R, const std::vector<std::uint64_t>& codes) {
  std::vector<cfgring::StepElem> parts;
  std::size_t g = 0;
  for (const auto& f : R.factors()) {
    std::vector<std::uint64_t> v(codes.begin() + g, codes.begin() + g + f.atom_count());
    parts.push_back(f.from_values(v));
    g += f.atom_count();
  }
  return R.from_parts(parts);
}

}  // namespace testsupport
