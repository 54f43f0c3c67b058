#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cfgring/cfg_check.hpp"
#include "cfgring/structure.hpp"
#include "support.hpp"

using namespace cfgring;

namespace {

SubringPresentation pres(const std::string& ring, const std::vector<std::string>& gens) {
  const auto R = ProductRing::parse(ring);
  std::vector<ProductElem> g;
  for (const auto& s : gens) g.push_back(R.parse_element(s));
  return {R, g};
}

RingSignature sig(const std::string& s) { return RingSignature::parse(s); }

std::vector<ProductElem> scalars(const ProductRing& R, std::vector<std::uint64_t> codes) {
  std::vector<ProductElem> out;
  for (auto c : codes) {
    std::vector<StepElem> parts;
    for (const auto& f : R.factors()) parts.push_back(f.scalar(c));
    out.push_back(R.from_parts(parts));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CFG witness check

TEST(CfgCheck, Examples) {
  const auto R2 = ProductRing::parse("GF(2)^[B(atoms=2)]");
  EXPECT_TRUE(cfg_witness_check(R2, scalars(R2, {0, 1})).holds);
  const auto R4 = ProductRing::parse("GF(4)");
  const auto r = cfg_witness_check(R4, scalars(R4, {0, 1}));
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.uncovered.size(), 2u);
  EXPECT_EQ(r.uncovered[0].missing, 2u);
  EXPECT_EQ(r.uncovered[1].missing, 3u);
  EXPECT_TRUE(r.consistent());
  const auto R3 = ProductRing::parse("GF(3)^[B(atoms=2)]");
  const auto r3 = cfg_witness_check(R3, scalars(R3, {0, 1, 2}));
  EXPECT_TRUE(r3.holds);
  EXPECT_TRUE(r3.exhaustive);
  EXPECT_EQ(r3.product_checked, 9u);
  EXPECT_TRUE(r3.product_vanishes);
}

TEST(CfgCheck, NonScalarGenerators) {
  // Values g at atom 0 and g+1 at atom 1 never coexist at one atom, yet the
  // shifted generators cover everything.
  const auto R = ProductRing::parse("GF(4)^[B(atoms=2)]");
  std::vector<ProductElem> gens;
  for (std::uint64_t i = 0; i < 4; ++i) gens.push_back(R.from_parts({R.factor(0).from_values(std::vector<std::uint64_t>{i, 3 - i})}));
  const auto r = cfg_witness_check(R, gens);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.product_vanishes);
  gens.pop_back();
  const auto r2 = cfg_witness_check(R, gens);
  EXPECT_FALSE(r2.holds);
  EXPECT_FALSE(r2.product_vanishes);
  EXPECT_EQ(r2.uncovered_atoms, 2u);
}

TEST(CfgCheck, LargeRingsUseSampling) {
  const auto R = ProductRing::parse("GF(2)^[B(atoms=1000)] x GF(4)^[B(atoms=10)]");
  const auto r = cfg_witness_check(R, covering_scalars(R));
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.product_checked, 1000u);
  EXPECT_TRUE(r.product_vanishes);
}

// ---------------------------------------------------------------------------
// Generated subrings

TEST(Structure, GeneratedSubringExamples) {
  EXPECT_EQ(generated_subring(pres("GF(2)^[B(atoms=3)]", {})).size(), 2u);
  EXPECT_EQ(generated_subring(pres("GF(4)", {"g"})).size(), 4u);
  const auto T = generated_subring(pres("GF(2)^[B(atoms=2)]", {"{[0]->1; [1]->0}"}));
  EXPECT_EQ(T.size(), 4u);
  EXPECT_EQ(generated_subring(pres("GF(2) x GF(3)", {})).size(), 6u);
  EXPECT_THROW(generated_subring(pres("GF(5)^[B(atoms=4)]", {"{[0]->1; [1]->2; [2]->3; [3]->4}"}), 100), CapExceeded);
}

TEST(Structure, GeneratedSubringMatchesNaiveClosure) {
  std::mt19937_64 rng(41);
  const std::vector<std::string> rings{"GF(2)^[B(atoms=3)]", "GF(4)^[B(atoms=2)]", "GF(2)^[B(atoms=1)] x GF(3)^[B(atoms=2)]",
                                       "GF(9)^[B(atoms=1)] x GF(2)^[B(atoms=1)]", "GF(8) x GF(4)"};
  for (const auto& spec : rings) {
    const auto R = ProductRing::parse(spec);
    const auto A = testsupport::atom_ring(R);
    for (int t = 0; t < 20; ++t) {
      std::vector<ProductElem> gens;
      std::vector<std::vector<std::uint64_t>> raw;
      for (std::uint64_t k = rng() % 3; k > 0; --k) {
        gens.push_back(random_element(R, rng));
        raw.push_back(gens.back().values());
      }
      const auto T = generated_subring({R, gens});
      const auto naive = oracle::closure(A, raw);
      ASSERT_EQ(T.size(), naive.size()) << spec;
      for (const auto& x : T) ASSERT_TRUE(naive.count(x.values()));
      ASSERT_TRUE(std::is_sorted(T.begin(), T.end()));
    }
  }
}

// ---------------------------------------------------------------------------
// Finite reduced decomposition

TEST(Structure, DecomposeFiniteReducedExamples) {
  const auto two = decompose_finite_reduced(generated_subring(pres("GF(2)^[B(atoms=2)]", {})));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_TRUE(two[0].idempotent.is_one());
  EXPECT_EQ(two[0].field.to_string(), "GF(2)");

  const auto z6 = decompose_finite_reduced(generated_subring(pres("GF(2) x GF(3)", {})));
  ASSERT_EQ(z6.size(), 2u);
  std::set<std::string> got;
  for (const auto& c : z6) got.insert(c.idempotent.to_string() + " " + c.field.to_string());
  EXPECT_TRUE(got.count("({[all]->1}, {[all]->0}) GF(2)"));
  EXPECT_TRUE(got.count("({[all]->0}, {[all]->1}) GF(3)"));

  const auto diag = decompose_finite_reduced(generated_subring(pres("GF(4)^[B(atoms=2)]", {"g"})));
  ASSERT_EQ(diag.size(), 1u);
  EXPECT_EQ(diag[0].field.to_string(), "GF(4)");
}

TEST(Structure, DecomposeFiniteReducedInvariants) {
  std::mt19937_64 rng(43);
  const std::vector<std::string> rings{"GF(2)^[B(atoms=3)] x GF(3)", "GF(4)^[B(atoms=3)]", "GF(9)^[B(atoms=2)] x GF(5)"};
  for (const auto& spec : rings) {
    const auto R = ProductRing::parse(spec);
    for (int t = 0; t < 15; ++t) {
      std::vector<ProductElem> gens{random_element(R, rng), random_element(R, rng)};
      const auto T = generated_subring({R, gens});
      const auto comps = decompose_finite_reduced(T);
      std::vector<ProductElem> idem;
      std::uint64_t prod = 1;
      for (const auto& c : comps) {
        idem.push_back(c.idempotent);
        prod *= c.field.order();
      }
      ASSERT_TRUE(product_cfoi_check(idem));
      ASSERT_EQ(prod, T.size());
    }
  }
}

TEST(Structure, DecomposeRejectsBadInput) {
  const auto R = ProductRing::parse("GF(3)^[B(atoms=2)]");
  std::vector<ProductElem> notclosed{R.zero(), R.one()};
  EXPECT_THROW(decompose_finite_reduced(notclosed), InputError);
}

TEST(CfgCheck, CounterexampleAgreesWithProductRoundTrip) {
  std::mt19937_64 rng(7);
  for (const auto* spec : {"GF(2)^[B(atoms=2)] x GF(3)", "GF(4) x GF(4)^[B(atoms=2)]", "GF(3)^[B(atoms=3)]"}) {
    const auto R = ProductRing::parse(spec);
    const auto elems = R.elements(1u << 12);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<ProductElem> gens;
      const int n = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < n; ++i) gens.push_back(random_element(R, rng));
      std::optional<ProductElem> expect;
      for (const auto& x : elems) {
        try {
          if (product_conv(product_conv_extract(x, gens)) == x) continue;
        } catch (const NotAWitness&) {
        }
        expect = x;
        break;
      }
      EXPECT_EQ(conv_extract_counterexample(elems, gens), expect) << spec;

      for (std::size_t k = 0; k < elems.size(); k += 5) {
        ProductElem full = R.one();
        for (const auto& g : gens) full = full * (elems[k] - g);
        EXPECT_EQ(vanishing_product(elems[k], gens), full);
      }
    }
  }
}

TEST(CfgCheck, CounterexampleRejectsForeignGenerators) {
  const auto R = ProductRing::parse("GF(2) x GF(3)");
  const auto S = ProductRing::parse("GF(3) x GF(2)");
  const auto elems = R.elements(64);
  const std::vector<ProductElem> gens{S.zero()};
  EXPECT_THROW(conv_extract_counterexample(elems, gens), InputError);
}

// ---------------------------------------------------------------------------
// Structure theorem

TEST(Structure, DecomposeExamples) {
  EXPECT_EQ(structure_decompose(pres("GF(2)^[B(atoms=3)]", {"0", "1"})).signature, sig("sig{GF(2):3}"));
  const auto d = structure_decompose(pres("GF(4)^[B(atoms=4)]", {"{[3]->0; [2]->1; [0,1]->g}"}));
  EXPECT_EQ(d.signature, sig("sig{GF(2):2, GF(4):2}"));
  // idempotents of T split the atoms as {0,1}, {2}, {3}: T = GF(4) x GF(2) x GF(2)
  EXPECT_EQ(d.subring_size, 16u);
  EXPECT_EQ(structure_decompose(pres("GF(2)^[B(atoms=1)] x GF(2)^[B(atoms=2)]", {"0", "1"})).signature, sig("sig{GF(2):3}"));
}

TEST(Structure, DecompositionMatchesResidueOracle) {
  std::mt19937_64 rng(47);
  const std::vector<std::string> rings{"GF(4)^[B(atoms=4)]", "GF(8)^[B(atoms=2)] x GF(2)", "GF(9)^[B(atoms=2)] x GF(4)",
                                       "GF(16)^[B(atoms=2)]", "GF(3)^[B(atoms=2)] x GF(4)^[B(atoms=2)]"};
  for (const auto& spec : rings) {
    const auto R = ProductRing::parse(spec);
    const auto A = testsupport::atom_ring(R);
    for (int t = 0; t < 10; ++t) {
      std::vector<ProductElem> gens;
      std::vector<std::vector<std::uint64_t>> raw;
      for (std::uint64_t k = rng() % 3; k > 0; --k) {
        gens.push_back(random_element(R, rng));
        raw.push_back(gens.back().values());
      }
      RingSignature expect;
      for (const auto& [f, a] : oracle::residue_signature(A, oracle::closure(A, raw))) expect.add({f.first, f.second}, a);
      ASSERT_EQ(structure_decompose({R, gens}).signature, expect) << spec;
    }
  }
}

TEST(Structure, IsoExamples) {
  const auto a = pres("GF(2)^[B(atoms=2)]", {"0", "1"});
  EXPECT_TRUE(iso_test(a, a));
  EXPECT_TRUE(iso_test(a, pres("GF(2) x GF(2)", {"0", "1"})));
  EXPECT_FALSE(iso_test(a, pres("GF(4)^[B(atoms=2)]", {"g"})));
  // without g the GF(4)^[B2] presentation is just GF(2)^[B2]
  EXPECT_TRUE(iso_test(a, pres("GF(4)^[B(atoms=2)]", {"0", "1"})));
}

TEST(Structure, PresentationInvariance) {
  const auto R = ProductRing::parse("GF(4)^[B(atoms=2)] x GF(3)^[B(atoms=1)] x GF(2)^[B(atoms=2)]");
  std::vector<ProductElem> gens{R.parse_element("({[0]->g; [1]->1}, 2, {[0]->1; [1]->0})"), R.parse_element("(1, 0, 1)")};
  const auto s = structure_decompose({R, gens}).signature;
  std::reverse(gens.begin(), gens.end());
  EXPECT_EQ(structure_decompose({R, gens}).signature, s);
  // g^2 = g+1 generates the same subring as g
  std::vector<ProductElem> alt{gens[0], gens[1] * gens[1]};
  EXPECT_EQ(structure_decompose({R, alt}).signature, s);
  // permuted factors
  const auto P = ProductRing::parse("GF(2)^[B(atoms=2)] x GF(4)^[B(atoms=2)] x GF(3)^[B(atoms=1)]");
  std::vector<ProductElem> pg;
  for (const auto& g : gens) pg.push_back(P.from_parts({g.part(2), g.part(0), g.part(1)}));
  EXPECT_EQ(structure_decompose({P, pg}).signature, s);
}

TEST(Structure, SignatureText) {
  RingSignature s;
  s.add({2, 2}, 1);
  s.add({2, 1}, 2);
  s.add({2, 1}, 1);
  EXPECT_EQ(s.to_string(), "sig{GF(2):3, GF(4):1}");
  EXPECT_EQ(sig(s.to_string()), s);
  EXPECT_EQ(s.total_atoms(), 4u);
  EXPECT_THROW(sig("sig{GF(2):1, GF(2):2}"), ParseError);
  EXPECT_EQ(sig("sig{GF(4):1, GF(2):2}"), sig("sig{GF(2):2, GF(4):1}"));
  EXPECT_THROW(sig("sig{GF(2):0}"), ParseError);
  EXPECT_EQ(ring_from_signature(s).to_string(), "GF(2)^[B(atoms=3)] x GF(4)^[B(atoms=1)]");
}

TEST(Structure, CharExamples) {
  const auto a = ProductRing::parse("GF(2)^[B(atoms=3)]");
  EXPECT_EQ(ring_char(a), 2u);
  EXPECT_EQ(char_decompose(a).size(), 1u);
  const auto b = ProductRing::parse("GF(2) x GF(3)");
  EXPECT_EQ(ring_char(b), 6u);
  const auto blocks = char_decompose(b);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].prime, 2u);
  EXPECT_EQ(blocks[0].idempotent.to_string(), "({[all]->1}, {[all]->0})");
  EXPECT_EQ(blocks[1].idempotent.to_string(), "({[all]->0}, {[all]->1})");
  const auto c = ProductRing::parse("GF(2) x GF(4) x GF(3)");
  EXPECT_EQ(ring_char(c), 6u);
  const auto cb = char_decompose(c);
  EXPECT_EQ(cb[0].signature, sig("sig{GF(2):1, GF(4):1}"));
  std::vector<ProductElem> idem{cb[0].idempotent, cb[1].idempotent};
  EXPECT_TRUE(product_cfoi_check(idem));
  EXPECT_EQ(ring_char(SubringPresentation{c, {}}), 6u);
}
