#include "cfgring/cfg_check.hpp"

#include <algorithm>
#include <random>

namespace cfgring {

namespace {

struct Cell {
  BoolElem atoms;
  std::vector<std::uint64_t> values;
};

// Common refinement of the factor-`f` parts of `gens`.
std::vector<Cell> refine(const KBRing& factor, std::size_t f, std::span<const ProductElem> gens) {
  std::vector<Cell> cells{Cell{factor.bool_ring().one(), {}}};
  for (const auto& g : gens) {
    std::vector<Cell> next;
    for (auto& c : cells) {
      for (const auto& b : g.part(f).blocks()) {
        BoolElem piece = c.atoms & b.part;
        if (piece.is_zero()) continue;
        Cell n{std::move(piece), c.values};
        n.values.push_back(b.value);
        next.push_back(std::move(n));
      }
    }
    cells = std::move(next);
  }
  for (auto& c : cells) {
    std::sort(c.values.begin(), c.values.end());
    c.values.erase(std::unique(c.values.begin(), c.values.end()), c.values.end());
  }
  return cells;
}

void check_gens(const ProductRing& ring, std::span<const ProductElem> gens) {
  for (const auto& g : gens)
    if (!(g.ring() == ring)) throw InputError("generator " + g.to_string() + " is not in " + ring.to_string());
}

}  // namespace

bool residues_cover(const ProductRing& ring, std::span<const ProductElem> gens) {
  check_gens(ring, gens);
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const std::uint64_t q = ring.factor(f).field().order();
    if (gens.size() < q) return false;
    for (const auto& c : refine(ring.factor(f), f, gens))
      if (c.values.size() != q) return false;
  }
  return true;
}

ProductElem vanishing_product(const ProductElem& x, std::span<const ProductElem> gens) {
  ProductElem acc = x.ring().one();
  for (const auto& g : gens) {
    acc = acc * (x - g);
    if (acc.is_zero()) break;  // stays zero
  }
  return acc;
}

std::optional<ProductElem> conv_extract_counterexample(std::span<const ProductElem> elems,
                                                       std::span<const ProductElem> gens) {
  for (const auto& x : elems) {
    const auto& ring = x.ring();
    check_gens(ring, gens);
    for (std::size_t i = 0; i < ring.factor_count(); ++i) {
      const auto& gen = [&](std::size_t k) -> const StepElem& { return gens[k].part(i); };
      std::vector<BoolElem> coeffs;
      try {
        coeffs = kb_extract_coeffs(x.part(i), gens.size(), gen);
      } catch (const NotAWitness&) {
        return x;
      }
      // Reassemble sum a_k x_k; from_blocks rejects coefficients that are
      // not a partition of the atoms.
      std::vector<Block> cells;
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        for (const auto& b : gen(k).blocks()) {
          BoolElem part = b.part & coeffs[k];
          if (!part.is_zero()) cells.push_back(Block{std::move(part), b.value});
        }
      }
      try {
        if (StepElem::from_blocks(ring.factor(i), std::move(cells)) != x.part(i)) return x;
      } catch (const InputError&) {
        return x;
      }
    }
  }
  return std::nullopt;
}

CfgReport cfg_witness_check(const ProductRing& ring, std::span<const ProductElem> gens,
                            const CfgCheckOptions& opts) {
  check_gens(ring, gens);
  CfgReport r;
  for (std::size_t f = 0; f < ring.factor_count(); ++f) {
    const auto& field = ring.factor(f).field();
    const std::uint64_t q = field.order();
    for (const auto& c : refine(ring.factor(f), f, gens)) {
      if (c.values.size() == q) continue;
      r.uncovered_atoms += c.atoms.count();
      for (auto atom : c.atoms.atoms()) {
        if (r.uncovered.size() >= opts.list_limit) break;
        std::size_t k = 0;
        for (std::uint64_t code = 0; code < q && r.uncovered.size() < opts.list_limit; ++code) {
          while (k < c.values.size() && c.values[k] < code) ++k;
          if (k < c.values.size() && c.values[k] == code) continue;
          r.uncovered.push_back(UncoveredResidue{f, atom, code});
        }
      }
    }
  }
  r.holds = r.uncovered_atoms == 0;

  const auto size = ring.size();
  r.exhaustive = size && *size <= opts.exhaustive_cap;
  auto test = [&](const ProductElem& x) {
    ++r.product_checked;
    if (!r.product_counterexample && !vanishing_product(x, gens).is_zero()) r.product_counterexample = x;
  };
  if (r.exhaustive) {
    for (std::uint64_t i = 0; i < *size; ++i) test(ring.element_at(i));
  } else {
    std::mt19937_64 rng(opts.seed);
    for (std::uint64_t i = 0; i < opts.samples; ++i) test(random_element(ring, rng));
  }
  r.product_vanishes = !r.product_counterexample;
  return r;
}

std::string CfgReport::to_string(const ProductRing& ring) const {
  std::string out = "residue coverage: " + std::string(holds ? "holds" : "fails") + "\n";
  if (!holds) {
    out += "uncovered atoms: " + std::to_string(uncovered_atoms) + "\n";
    for (const auto& u : uncovered)
      out += "  factor " + std::to_string(u.factor) + " atom " + std::to_string(u.atom) + " missing " +
             ring.factor(u.factor).field().format(u.missing) + "\n";
  }
  out += "product check (" + std::string(exhaustive ? "exhaustive" : "sampled") + ", " +
         std::to_string(product_checked) + " elements): " + (product_vanishes ? "vanishes" : "nonzero") + "\n";
  if (product_counterexample) out += "  at x = " + product_counterexample->to_string() + "\n";
  return out;
}

}  // namespace cfgring
