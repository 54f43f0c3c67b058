#include "cfgring/selftest.hpp"

#include <functional>
#include <random>

#include "cfgring/cfg_check.hpp"
#include "cfgring/gallery.hpp"
#include "cfgring/maps.hpp"
#include "cfgring/structure.hpp"

namespace cfgring {

namespace {

struct Suite {
  SuiteResult r;
  explicit Suite(std::string name) { r.name = std::move(name); }
  void check(bool ok, const std::function<std::string()>& what) {
    ++r.cases;
    if (!ok && r.passed) {
      r.passed = false;
      r.detail = what();
    }
  }
};

ProductRing random_ring(std::mt19937_64& rng) {
  static const std::pair<std::uint64_t, unsigned> fields[] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}};
  const std::size_t nf = 1 + rng() % 2;
  std::vector<KBRing> factors;
  for (std::size_t i = 0; i < nf; ++i) {
    const auto [p, n] = fields[rng() % 6];
    factors.emplace_back(FiniteField::make(p, n), BooleanRing(1 + rng() % 4));
  }
  return ProductRing(std::move(factors));
}

SuiteResult field_axioms(const SelftestOptions&) {
  Suite s("field axioms");
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}}) {
    const auto K = FiniteField::make(p, n);
    const auto q = K.order();
    for (std::uint64_t a = 0; a < q; ++a) {
      s.check(a == 0 || K.mul(a, K.inv(a)) == 1, [&] { return K.to_string() + " inverse of " + K.format(a); });
      for (std::uint64_t b = 0; b < q; ++b)
        for (std::uint64_t c = 0; c < q; ++c) {
          const bool ok = K.add(K.add(a, b), c) == K.add(a, K.add(b, c)) &&
                          K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c)) &&
                          K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)) && K.mul(a, b) == K.mul(b, a) &&
                          K.add(a, b) == K.add(b, a) && K.sub(K.add(a, b), b) == a;
          s.check(ok, [&] { return K.to_string() + " at " + K.format(a) + ", " + K.format(b) + ", " + K.format(c); });
        }
    }
  }
  return s.r;
}

SuiteResult frobenius(const SelftestOptions&) {
  Suite s("x^q = x");
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 251})
    for (unsigned n = 1;; ++n) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < n; ++i) q *= p;
      if (q > 256) break;
      const auto K = FiniteField::make(p, n);
      for (std::uint64_t a = 0; a < q; ++a)
        s.check(K.pow(a, q) == a, [&] { return K.to_string() + " at " + K.format(a); });
    }
  return s.r;
}

SuiteResult boolean_axioms(const SelftestOptions&) {
  Suite s("Boolean ring axioms");
  for (std::size_t atoms = 1; atoms <= 4; ++atoms) {
    const BooleanRing B(atoms);
    std::vector<BoolElem> all;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << atoms); ++m) {
      BoolElem e(B);
      for (std::size_t a = 0; a < atoms; ++a) e.set(a, (m >> a) & 1);
      all.push_back(e);
    }
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all) {
          const bool ok = ((a ^ b) ^ c) == (a ^ (b ^ c)) && ((a & b) & c) == (a & (b & c)) &&
                          (a & (b ^ c)) == ((a & b) ^ (a & c)) && (a & a) == a && (a ^ a) == B.zero() &&
                          (a & B.one()) == a && a.leq(a | b) == true;
          s.check(ok, [&] { return a.to_string() + ", " + b.to_string() + ", " + c.to_string(); });
        }
  }
  return s.r;
}

SuiteResult ring_axioms(const SelftestOptions& opts) {
  Suite s("product ring axioms (random)");
  std::mt19937_64 rng(opts.seed);
  for (std::uint64_t k = 0; k < opts.random_cases; ++k) {
    const auto R = random_ring(rng);
    const auto x = random_element(R, rng), y = random_element(R, rng), z = random_element(R, rng);
    const bool ok = (x + y) + z == x + (y + z) && (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z &&
                    x * y == y * x && x + y == y + x && x + R.zero() == x && x * R.one() == x && x - x == R.zero();
    s.check(ok, [&] { return R.to_string() + ": " + x.to_string() + ", " + y.to_string() + ", " + z.to_string(); });
  }
  return s.r;
}

SuiteResult regularity(const SelftestOptions& opts) {
  Suite s("regularity and normal form");
  std::mt19937_64 rng(opts.seed + 1);
  for (std::uint64_t k = 0; k < opts.random_cases; ++k) {
    const auto R = random_ring(rng);
    const auto x = random_element(R, rng);
    const auto xs = product_quasi_inverse(x);
    s.check(x * xs * x == x && xs * x * xs == xs && x * xs == product_e(x),
            [&] { return "quasi-inverse of " + x.to_string(); });
    // Splitting blocks and shuffling them must not change the element.
    const auto& part = x.part(0);
    std::vector<Block> blocks;
    for (const auto& b : part.blocks()) {
      BoolElem lo(part.ring().bool_ring()), hi(part.ring().bool_ring());
      for (auto a : b.part.atoms()) (rng() % 2 ? lo : hi).set(a);
      blocks.push_back(Block{lo, b.value});
      blocks.push_back(Block{hi, b.value});
    }
    std::shuffle(blocks.begin(), blocks.end(), rng);
    s.check(StepElem::from_blocks(part.ring(), blocks) == part, [&] { return "normal form of " + part.to_string(); });
  }
  return s.r;
}

SuiteResult theorem_one(const SelftestOptions& opts) {
  Suite s("CFG conditions agree");
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}})
    for (std::size_t m = 1;; ++m) {
      const auto K = FiniteField::make(p, n);
      std::uint64_t size = 1;
      for (std::size_t i = 0; i < m; ++i) size *= K.order();
      if (size > 81 || size > opts.exhaustive_cap) break;
      const ProductRing R(KBRing(K, BooleanRing(m)));
      const auto elems = R.elements(size);
      for (std::uint64_t S = 0; S < (std::uint64_t{1} << K.order()); ++S) {
        std::vector<ProductElem> gens;
        for (std::uint64_t c = 0; c < K.order(); ++c)
          if ((S >> c) & 1) gens.push_back(R.from_parts({R.factor(0).scalar(c)}));
        const bool c3 = residues_cover(R, gens);
        bool c2 = true;
        for (const auto& x : elems) c2 = c2 && vanishing_product(x, gens).is_zero();
        const bool c1 = !conv_extract_counterexample(elems, gens);
        s.check(c1 == c2 && c2 == c3, [&] { return R.to_string() + " subset mask " + std::to_string(S); });
      }
    }
  return s.r;
}

SuiteResult structure_roundtrip(const SelftestOptions&) {
  Suite s("signature round trip");
  const FieldClass fields[] = {{2, 1}, {3, 1}, {2, 2}};
  // Atom counts per field with total in [1, 4].
  for (std::uint64_t a = 0; a <= 4; ++a)
    for (std::uint64_t b = 0; a + b <= 4; ++b)
      for (std::uint64_t c = 0; a + b + c <= 4; ++c) {
        if (a + b + c == 0) continue;
        RingSignature sig;
        sig.add(fields[0], a);
        sig.add(fields[1], b);
        sig.add(fields[2], c);
        const auto R = ring_from_signature(sig);
        const auto d = structure_decompose(SubringPresentation{R, factor_generators(R)});
        s.check(d.signature == sig, [&] { return sig.to_string() + " came back as " + d.signature.to_string(); });
      }
  return s.r;
}

SuiteResult contractive_conv(const SelftestOptions&) {
  Suite s("contractive iff commutes with conv");
  for (const char* text : {"GF(2)^[B(atoms=2)]", "GF(4)^[B(atoms=1)]"}) {
    const auto R = enumerate(ProductRing::parse(text));
    const std::uint64_t N = R->size();
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < N; ++i) total *= N;
    for (std::uint64_t m = 0; m < total; ++m) {
      std::vector<std::uint64_t> images(N);
      std::uint64_t r = m;
      for (auto& v : images) {
        v = r % N;
        r /= N;
      }
      const MapTable f(R, std::move(images));
      s.check(is_contractive(f).holds == commutes_with_conv(f).holds, [&] { return f.to_text(); });
    }
  }
  return s.r;
}

SuiteResult e_power(const SelftestOptions& opts) {
  Suite s("e(x) = x^m");
  for (const char* text : {"GF(2) x GF(4)", "GF(3) x GF(4)", "GF(2) x GF(3) x GF(4)", "GF(5)^[B(atoms=2)] x GF(3)"}) {
    const auto R = ProductRing::parse(text);
    const auto e = e_poly_exponent(R, opts.exhaustive_cap);
    s.check(e.verified, [&] { return std::string(text) + " at " + e.counterexample->to_string(); });
    const auto table = e_map_table(enumerate(R, opts.exhaustive_cap));
    s.check(is_contractive(table).holds, [&] { return std::string("e not contractive on ") + text; });
  }
  return s.r;
}

SuiteResult contractive_poly(const SelftestOptions&) {
  Suite s("contractive maps are polynomial");
  for (const char* text : {"GF(3)^[B(atoms=2)]", "GF(2)^[B(atoms=3)]", "GF(2) x GF(4)"}) {
    for (const auto& f : enumerate_contractive(enumerate(ProductRing::parse(text)))) {
      bool ok = is_contractive(f).holds;
      try {
        const auto F = contractive_to_poly(f);
        ok = ok && MapTable::from_poly(f.ring_ptr(), F) == f;
      } catch (const std::exception&) {
        ok = false;
      }
      s.check(ok, [&] { return f.to_text(); });
    }
  }
  return s.r;
}

SuiteResult orbits(const SelftestOptions& opts) {
  Suite s("iteration orbits agree");
  std::mt19937_64 rng(opts.seed + 2);
  for (const char* text : {"GF(2)^[B(atoms=3)]", "GF(3)^[B(atoms=2)]", "GF(4)^[B(atoms=2)]", "GF(2) x GF(3)", "GF(2)^[B(atoms=2)] x GF(4)"}) {
    const auto ring = ProductRing::parse(text);
    const auto R = enumerate(ring);
    const auto gens = covering_scalars(ring);
    std::vector<PolyMap> maps{PolyMap(ring, {ring.one(), ring.one()}), PolyMap(ring, {ring.zero(), ring.zero(), ring.one()})};
    for (int k = 0; k < 20; ++k) {
      std::vector<ProductElem> c;
      for (std::uint64_t d = 0, deg = 1 + rng() % 4; d <= deg; ++d) c.push_back(random_element(ring, rng));
      maps.emplace_back(ring, std::move(c));
    }
    for (const auto& F : maps) {
      const auto t = iteration_orbit_table(MapTable::from_poly(R, F));
      const auto m = iteration_orbit_matrix(F, gens);
      s.check(t.orbit_size == m.orbit_size && t.tail == m.tail && t.period == m.period,
              [&] { return std::string(text) + " " + F.to_string(); });
    }
  }
  return s.r;
}

SuiteResult gallery_checks(const SelftestOptions& opts) {
  Suite s("gallery");
  const auto k = gf4_kernel_check();
  s.check(k.ok(), [] { return std::string("GF(4) kernel"); });
  std::vector<TowerReport> reports;
  for (std::size_t N = 1; N <= 3; ++N) {
    TowerOptions to;
    to.seed = opts.seed;
    reports.push_back(tower_verify(TowerRing::build(2, N), to));
    s.check(reports.back().ok(), [&] { return reports.back().to_string(); });
  }
  s.check(tower_growth(reports), [] { return std::string("tower quotients do not grow"); });
  const auto seq = gf4_sequence_demo(3, 1);
  s.check(seq.ok(), [&] { return seq.to_string(); });
  const auto v = vraciu_build(FieldAssignment{{FiniteField::make(2, 1), FiniteField::make(2, 1), FiniteField::make(2, 2)}});
  s.check(v.ok, [&] { return v.to_string(); });
  const auto R = ProductRing::parse("GF(2) x GF(3) x GF(4)");
  const auto blocks = char_decompose(R);
  std::vector<ProductElem> idem;
  for (const auto& b : blocks) idem.push_back(b.idempotent);
  s.check(ring_char(R) == 6 && blocks.size() == 2 && product_cfoi_check(idem), [] { return std::string("char decomposition"); });
  return s.r;
}

SuiteResult text_roundtrip(const SelftestOptions& opts) {
  Suite s("text round trip");
  std::mt19937_64 rng(opts.seed + 3);
  for (std::uint64_t k = 0; k < opts.roundtrip_cases; ++k) {
    const auto R = random_ring(rng);
    switch (k % 5) {
      case 0: {
        s.check(ProductRing::parse(R.to_string()) == R, [&] { return R.to_string(); });
        break;
      }
      case 1: {
        const auto x = random_element(R, rng);
        s.check(R.parse_element(x.to_string()) == x, [&] { return x.to_string(); });
        break;
      }
      case 2: {
        const auto& K = R.factor(0).field();
        const auto c = rng() % K.order();
        s.check(K.parse_code(K.format(c)) == c, [&] { return K.format(c); });
        break;
      }
      case 3: {
        const auto sig = ambient_signature(R);
        s.check(RingSignature::parse(sig.to_string()) == sig, [&] { return sig.to_string(); });
        break;
      }
      default: {
        std::vector<ProductElem> c;
        for (std::uint64_t d = 0, deg = rng() % 4; d <= deg; ++d) c.push_back(random_element(R, rng));
        const PolyMap F(R, std::move(c));
        s.check(PolyMap::parse(R, F.to_string()) == F, [&] { return F.to_string(); });
      }
    }
  }
  return s.r;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  std::vector<SuiteResult> out;
  for (auto suite : {field_axioms, frobenius, boolean_axioms, ring_axioms, regularity, theorem_one, structure_roundtrip,
                     contractive_conv, e_power, contractive_poly, orbits, gallery_checks, text_roundtrip}) {
    try {
      out.push_back(suite(opts));
    } catch (const std::exception& e) {
      out.push_back(SuiteResult{"(suite raised)", false, 0, e.what()});
    }
  }
  return out;
}

}  // namespace cfgring
