#include "cfgring/maps.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <stdexcept>

#include "cfgring/cfg_check.hpp"
#include "cfgring/text.hpp"

namespace cfgring {

// ---------------------------------------------------------------------------
// PolyMap

PolyMap::PolyMap(ProductRing ring, std::vector<ProductElem> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!(c.ring() == ring_)) throw InputError("coefficient " + c.to_string() + " is not in " + ring_.to_string());
  while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(ring_.zero());
}

ProductElem PolyMap::operator()(const ProductElem& x) const {
  if (!(x.ring() == ring_)) throw InputError("argument " + x.to_string() + " is not in " + ring_.to_string());
  ProductElem acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

ProductElem poly_eval(const PolyMap& f, const ProductElem& x) { return f(x); }

std::string PolyMap::to_string() const {
  std::string out = "poly[";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += "; ";
    out += coeffs_[k].to_string();
  }
  return out + "]";
}

PolyMap parse_poly(const ProductRing& ring, Cursor& cur) {
  cur.expect("poly[");
  std::vector<ProductElem> coeffs;
  do {
    coeffs.push_back(parse_product_elem(ring, cur));
  } while (cur.consume(";"));
  cur.expect("]");
  return PolyMap(ring, std::move(coeffs));
}

PolyMap PolyMap::parse(const ProductRing& ring, std::string_view text) {
  Cursor cur(text);
  auto f = parse_poly(ring, cur);
  cur.expect_end();
  return f;
}

// ---------------------------------------------------------------------------
// EnumeratedRing

EnumeratedRing::EnumeratedRing(ProductRing ring, std::uint64_t cap) : ring_(std::move(ring)) {
  const auto n = ring_.size();
  if (!n || *n > cap)
    throw CapExceeded("ring " + ring_.to_string() + " has more than " + std::to_string(cap) + " elements");
  size_ = *n;
  std::uint64_t w = 1;
  for (const auto& f : ring_.factors()) {
    for (std::size_t a = 0; a < f.atom_count(); ++a) {
      radix_.push_back(f.field().order());
      weight_.push_back(w);
      w *= f.field().order();
    }
  }
  if (radix_.size() > 64) throw CapExceeded("more than 64 atoms in an enumerated ring");
  digits_.resize(size_ * radix_.size());
  elements_.reserve(size_);
  for (std::uint64_t i = 0; i < size_; ++i) {
    std::uint64_t r = i;
    for (std::size_t a = 0; a < radix_.size(); ++a) {
      digits_[i * radix_.size() + a] = static_cast<std::uint32_t>(r % radix_[a]);
      r /= radix_[a];
    }
    elements_.push_back(ring_.element_at(i));
  }
}

std::uint64_t EnumeratedRing::diff_mask(std::uint64_t i, std::uint64_t j) const {
  const std::size_t A = radix_.size();
  const std::uint32_t* x = &digits_[i * A];
  const std::uint32_t* y = &digits_[j * A];
  std::uint64_t m = 0;
  for (std::size_t a = 0; a < A; ++a)
    if (x[a] != y[a]) m |= std::uint64_t{1} << a;
  return m;
}

std::uint64_t EnumeratedRing::splice(std::uint64_t mask, std::uint64_t i, std::uint64_t j) const {
  const std::size_t A = radix_.size();
  std::uint64_t out = 0;
  for (std::size_t a = 0; a < A; ++a) out += weight_[a] * digits_[(((mask >> a) & 1) ? i : j) * A + a];
  return out;
}

std::uint64_t EnumeratedRing::from_digits(std::span<const std::uint32_t> digits) const {
  std::uint64_t out = 0;
  for (std::size_t a = 0; a < radix_.size(); ++a) out += weight_[a] * digits[a];
  return out;
}

std::shared_ptr<const EnumeratedRing> enumerate(const ProductRing& ring, std::uint64_t cap) {
  return std::make_shared<const EnumeratedRing>(ring, cap);
}

// ---------------------------------------------------------------------------
// MapTable

MapTable::MapTable(std::shared_ptr<const EnumeratedRing> ring, std::vector<std::uint64_t> images)
    : ring_(std::move(ring)), images_(std::move(images)) {
  if (images_.size() != ring_->size()) throw InputError("map table is not total");
  for (auto v : images_)
    if (v >= ring_->size()) throw InputError("map table image out of range");
}

MapTable MapTable::from_function(std::shared_ptr<const EnumeratedRing> ring,
                                 const std::function<ProductElem(const ProductElem&)>& f) {
  std::vector<std::uint64_t> images(ring->size());
  for (std::uint64_t i = 0; i < ring->size(); ++i) images[i] = ring->index_of(f(ring->element(i)));
  return MapTable(std::move(ring), std::move(images));
}

MapTable MapTable::from_poly(std::shared_ptr<const EnumeratedRing> ring, const PolyMap& f) {
  if (!(f.ring() == ring->ring())) throw InputError("polynomial and table rings differ");
  return from_function(std::move(ring), [&](const ProductElem& x) { return f(x); });
}

MapTable MapTable::identity(std::shared_ptr<const EnumeratedRing> ring) {
  std::vector<std::uint64_t> images(ring->size());
  for (std::uint64_t i = 0; i < images.size(); ++i) images[i] = i;
  return MapTable(std::move(ring), std::move(images));
}

ProductElem MapTable::operator()(const ProductElem& x) const { return ring_->element(images_.at(ring_->index_of(x))); }

MapTable MapTable::after(const MapTable& g) const {
  if (!(g.ring().ring() == ring().ring())) throw InputError("composing maps on different rings");
  std::vector<std::uint64_t> images(images_.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = images_[g.images_[i]];
  return MapTable(ring_, std::move(images));
}

std::string MapTable::to_text() const {
  std::string out = "map on " + ring_->ring().to_string() + "\n";
  for (std::uint64_t i = 0; i < images_.size(); ++i)
    out += ring_->element(i).to_string() + " -> " + ring_->element(images_[i]).to_string() + "\n";
  return out;
}

namespace {

// Offset of the first "->" outside brackets.
std::size_t top_level_arrow(std::string_view line) {
  int depth = 0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const char c = line[i];
    if (c == '{' || c == '[' || c == '(') ++depth;
    if (c == '}' || c == ']' || c == ')') --depth;
    if (depth == 0 && c == '-' && line[i + 1] == '>') return i;
  }
  return std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

MapTable MapTable::parse(std::string_view text, std::uint64_t cap) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  std::size_t ln = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    while (ln < lines.size()) {
      auto l = trim(lines[ln++]);
      if (!l.empty() && l.front() != '#') return l;
    }
    return std::nullopt;
  };
  auto wrap = [&](const ParseError& e) {
    return ParseError(e.text(), e.position(), "line " + std::to_string(ln) + ": " + e.message());
  };

  auto header = next_line();
  if (!header || header->substr(0, 7) != "map on ")
    throw ParseError(header ? std::string(*header) : std::string(), 0, "expected 'map on <ring>'");
  std::shared_ptr<const EnumeratedRing> ring;
  try {
    ring = enumerate(ProductRing::parse(header->substr(7)), cap);
  } catch (const ParseError& e) {
    throw ParseError(std::string(*header), e.position() + 7, "line " + std::to_string(ln) + ": " + e.message());
  }
  std::vector<std::uint64_t> images(ring->size(), ring->size());
  while (auto line = next_line()) {
    if (*line == "end") break;
    const auto arrow = top_level_arrow(*line);
    if (arrow == std::string_view::npos)
      throw ParseError(std::string(*line), 0, "line " + std::to_string(ln) + ": expected 'x -> f(x)'");
    try {
      const auto x = ring->ring().parse_element(trim(line->substr(0, arrow)));
      const auto i = ring->index_of(x);
      if (images[i] != ring->size())
        throw ParseError(std::string(*line), 0, "line " + std::to_string(ln) + ": element listed twice");
      images[i] = ring->index_of(ring->ring().parse_element(trim(line->substr(arrow + 2))));
    } catch (const ParseError& e) {
      if (e.text() == std::string(*line)) throw;
      throw wrap(e);
    }
  }
  for (std::uint64_t i = 0; i < images.size(); ++i)
    if (images[i] == ring->size()) throw InputError("map table has no line for " + ring->element(i).to_string());
  return MapTable(std::move(ring), std::move(images));
}

MapTable e_map_table(std::shared_ptr<const EnumeratedRing> ring) {
  return MapTable::from_function(std::move(ring), [](const ProductElem& x) { return product_e(x); });
}

// ---------------------------------------------------------------------------
// Contractivity and convex combinations

ContractiveResult is_contractive(const MapTable& f) {
  const auto& R = f.ring();
  for (std::uint64_t i = 0; i < R.size(); ++i)
    for (std::uint64_t j = 0; j < i; ++j)
      if (R.diff_mask(f.image(i), f.image(j)) & ~R.diff_mask(i, j)) return {false, std::make_pair(i, j)};
  return {};
}

ConvResult commutes_with_conv(const MapTable& f, const ConvCheckOptions& opts) {
  const auto& R = f.ring();
  const std::size_t A = R.atoms();
  const std::uint64_t N = R.size();
  const std::uint64_t masks = std::uint64_t{1} << A;
  ConvResult r;

  auto two_block = [&](std::uint64_t mask, std::uint64_t i, std::uint64_t j) {
    ++r.two_block_checked;
    if (f.image(R.splice(mask, i, j)) == R.splice(mask, f.image(i), f.image(j))) return true;
    std::vector<std::uint32_t> labels(A);
    for (std::size_t a = 0; a < A; ++a) labels[a] = ((mask >> a) & 1) ? 0 : 1;
    r.holds = false;
    r.witness = std::make_pair(std::move(labels), std::vector<std::uint64_t>{i, j});
    return false;
  };

  const bool small = A < 26 && N <= (std::uint64_t{1} << 20) && masks * N * N <= opts.exhaustive_limit;
  r.two_block_exhaustive = small;
  if (small) {
    for (std::uint64_t mask = 0; mask < masks; ++mask)
      for (std::uint64_t i = 0; i < N; ++i)
        for (std::uint64_t j = 0; j < N; ++j)
          if (!two_block(mask, i, j)) return r;
  } else {
    std::mt19937_64 rng(opts.seed);
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
      const std::uint64_t mask = A >= 64 ? rng() : rng() % masks;
      const std::uint64_t i = rng() % N;
      const std::uint64_t j = rng() % N;
      if (!two_block(mask, i, j)) return r;
    }
  }

  // Every c.f.o.i. has at most A nonzero members, so A labelled blocks cover
  // all of them.
  if (A > opts.full_max_atoms) return r;
  std::uint64_t cases = 1;
  for (std::size_t k = 0; k < 2 * A && cases <= opts.full_limit; ++k) cases *= (k < A ? A : N);
  if (cases > opts.full_limit) return r;
  std::vector<std::uint32_t> labels(A, 0);
  std::vector<std::uint64_t> vals(A, 0);
  std::vector<std::uint32_t> lhs(A), rhs(A);
  for (;;) {
    for (;;) {
      for (std::size_t a = 0; a < A; ++a) {
        lhs[a] = R.digit(vals[labels[a]], a);
        rhs[a] = R.digit(f.image(vals[labels[a]]), a);
      }
      ++r.full_checked_cases;
      if (f.image(R.from_digits(lhs)) != R.from_digits(rhs)) {
        r.holds = false;
        r.witness = std::make_pair(labels, vals);
        return r;
      }
      std::size_t k = 0;
      while (k < A && ++vals[k] == N) vals[k++] = 0;
      if (k == A) break;
    }
    std::size_t k = 0;
    while (k < A && ++labels[k] == A) labels[k++] = 0;
    if (k == A) break;
  }
  r.full_checked = true;
  return r;
}

// ---------------------------------------------------------------------------
// Iteration

IterationCertificate iteration_orbit_table(const MapTable& f, std::uint64_t cap) {
  // Brent's cycle detection on the sequence f, f^2, f^3, ...
  auto step = [&](const MapTable& g) { return f.after(g); };
  std::uint64_t power = 1, lam = 1;
  MapTable tortoise = f;
  MapTable hare = step(f);
  while (!(tortoise == hare)) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = step(hare);
    ++lam;
    if (power > 2 * cap) throw CapExceeded("iteration orbit longer than " + std::to_string(cap));
  }
  tortoise = f;
  hare = f;
  for (std::uint64_t i = 0; i < lam; ++i) hare = step(hare);
  std::uint64_t mu = 0;
  while (!(tortoise == hare)) {
    tortoise = step(tortoise);
    hare = step(hare);
    ++mu;
  }
  if (mu + lam > cap) throw CapExceeded("iteration orbit longer than " + std::to_string(cap));
  IterationCertificate c;
  c.method = OrbitMethod::table;
  c.orbit_size = mu + lam;
  c.tail = mu;
  c.period = lam;
  return c;
}

namespace {

using Matrix = std::vector<std::vector<ProductElem>>;

IterationCertificate matrix_orbit(const ProductRing& ring, const std::function<ProductElem(const ProductElem&)>& f,
                                  std::span<const ProductElem> gens, std::uint64_t cap) {
  if (gens.empty()) throw InputError("the matrix method needs generators");
  if (!residues_cover(ring, gens)) throw InputError("generators do not cover every quotient field");
  const std::size_t n = gens.size();

  Matrix A(n, std::vector<ProductElem>(n, ring.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    const auto combo = product_conv_extract(f(gens[i]), gens);
    for (std::size_t l = 0; l < n; ++l) A[l][i] = combo.coeffs[l];
  }

  std::vector<ProductElem> atoms{ring.one()};
  for (const auto& row : A)
    for (const auto& e : row) {
      std::vector<ProductElem> next;
      for (const auto& a : atoms)
        for (ProductElem piece : {a * e, a - a * e})
          if (!piece.is_zero()) next.push_back(std::move(piece));
      atoms = std::move(next);
    }
  auto in_R = [&](const ProductElem& e) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const ProductElem& r) {
      const auto er = e * r;
      return er.is_zero() || er == r;
    });
  };

  IterationCertificate c;
  c.method = OrbitMethod::matrix;
  c.gens.assign(gens.begin(), gens.end());
  c.boolean_atoms = atoms.size();

  std::map<std::vector<ProductElem>, std::uint64_t> seen;
  Matrix M = A;
  for (std::uint64_t k = 1;; ++k) {
    std::vector<ProductElem> key;
    for (std::size_t i = 0; i < n; ++i) {
      ProductElem v = ring.zero();
      for (std::size_t l = 0; l < n; ++l) v = v + M[l][i] * gens[l];
      key.push_back(std::move(v));
    }
    if (auto it = seen.find(key); it != seen.end()) {
      c.tail = it->second - 1;
      c.period = k - it->second;
      c.orbit_size = k - 1;
      return c;
    }
    if (k > cap) throw CapExceeded("iteration orbit longer than " + std::to_string(cap));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<ProductElem> column;
      for (std::size_t l = 0; l < n; ++l) {
        if (!in_R(M[l][i])) throw std::logic_error("matrix entry left the Boolean ring of the first matrix");
        column.push_back(M[l][i]);
      }
      if (!product_cfoi_check(column)) throw std::logic_error("matrix column is not a c.f.o.i.");
    }
    seen.emplace(std::move(key), k);
    if (c.matrices.size() < IterationCertificate::kStoredMatrices) c.matrices.push_back(M);
    Matrix next(n, std::vector<ProductElem>(n, ring.zero()));
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) next[l][i] = next[l][i] + A[l][j] * M[j][i];
    M = std::move(next);
  }
}

}  // namespace

IterationCertificate iteration_orbit_matrix(const PolyMap& f, std::span<const ProductElem> gens, std::uint64_t cap) {
  return matrix_orbit(f.ring(), [&](const ProductElem& x) { return f(x); }, gens, cap);
}

IterationCertificate iteration_orbit_matrix(const MapTable& f, std::span<const ProductElem> gens, std::uint64_t cap) {
  if (!commutes_with_conv(f).holds)
    throw InputError("the matrix method needs a map that commutes with convex combinations");
  return matrix_orbit(f.ring().ring(), [&](const ProductElem& x) { return f(x); }, gens, cap);
}

std::string IterationCertificate::to_string() const {
  std::string out = "method: " + std::string(method == OrbitMethod::table ? "table" : "matrix") + "\n";
  out += "orbit size: " + std::to_string(orbit_size) + " (tail " + std::to_string(tail) + ", period " +
         std::to_string(period) + ")\n";
  if (method == OrbitMethod::matrix) {
    out += "generators: " + std::to_string(gens.size()) + ", Boolean ring atoms: " + std::to_string(boolean_atoms) + "\n";
    if (!matrices.empty()) {
      out += "first matrix (column i holds the coefficients of f(x_i)):\n";
      for (const auto& row : matrices.front()) {
        out += " ";
        for (const auto& e : row) out += " " + e.to_string();
        out += "\n";
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// e as a polynomial

EExponent e_poly_exponent(const ProductRing& ring, std::uint64_t cap, std::uint64_t samples, std::uint64_t seed) {
  EExponent r;
  for (const auto& f : ring.factors()) r.quotient_sizes.push_back(f.field().order());
  std::sort(r.quotient_sizes.begin(), r.quotient_sizes.end());
  r.quotient_sizes.erase(std::unique(r.quotient_sizes.begin(), r.quotient_sizes.end()), r.quotient_sizes.end());
  for (auto n : r.quotient_sizes) {
    if (r.m > (std::uint64_t{1} << 62) / (n - 1)) throw CapExceeded("exponent overflows 62 bits");
    r.m *= n - 1;
  }
  auto test = [&](const ProductElem& x) {
    ++r.checked;
    if (!r.counterexample && product_e(x) != x.pow(r.m)) r.counterexample = x;
  };
  const auto size = ring.size();
  r.exhaustive = size && *size <= cap;
  if (r.exhaustive) {
    for (std::uint64_t i = 0; i < *size; ++i) test(ring.element_at(i));
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) test(random_element(ring, rng));
  }
  r.verified = !r.counterexample;
  return r;
}

QuotientBound quotient_bound_from_degree(const ProductRing& ring, std::uint64_t k) {
  QuotientBound b;
  b.degree = k;
  b.bound = 2 * k;
  for (std::size_t i = 0; i < ring.factor_count(); ++i) {
    const auto q = ring.factor(i).field().order();
    if (q >= b.bound) b.violations.emplace_back(i, q);
  }
  b.boolean_edge = !b.violations.empty() && k == 1 &&
                   std::all_of(b.violations.begin(), b.violations.end(), [](const auto& v) { return v.second == 2; });
  return b;
}

// ---------------------------------------------------------------------------
// Contractive maps as polynomials

PolyMap contractive_to_poly(const MapTable& f) {
  const auto c = is_contractive(f);
  if (!c.holds) throw InputError("map is not contractive");
  const ProductRing& ring = f.ring().ring();
  std::uint64_t d = 0;
  for (const auto& k : ring.factors()) d = std::max(d, k.field().order());

  std::vector<std::vector<StepElem>> parts(d);
  for (std::size_t i = 0; i < ring.factor_count(); ++i) {
    const KBRing& factor = ring.factor(i);
    const FiniteField& K = factor.field();
    std::vector<StepElem> coeff(d, factor.zero());
    for (std::uint64_t a = 0; a < K.order(); ++a) {
      const StepElem fa = f(ring.in_factor(i, factor.scalar(a))).part(i);
      const auto basis = ff_lagrange_basis(K, a);
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (basis[k]) coeff[k] = coeff[k] + fa * factor.scalar(basis[k]);
    }
    for (std::size_t k = 0; k < d; ++k) parts[k].push_back(std::move(coeff[k]));
  }
  std::vector<ProductElem> coeffs;
  for (auto& p : parts) coeffs.push_back(ring.from_parts(std::move(p)));
  PolyMap F(ring, std::move(coeffs));

  for (std::uint64_t i = 0; i < f.ring().size(); ++i)
    if (F(f.ring().element(i)) != f.ring().element(f.image(i)))
      throw std::logic_error("interpolated polynomial " + F.to_string() + " disagrees with the map at " +
                             f.ring().element(i).to_string());
  return F;
}

PolynomialResult is_polynomial(const MapTable& f) {
  PolynomialResult r;
  r.contractive = is_contractive(f);
  if (!r.contractive.holds) return r;
  r.witness = contractive_to_poly(f);
  r.holds = true;
  return r;
}

std::optional<PolyMap> polynomial_oracle(const MapTable& f, std::uint64_t max_size) {
  const auto& R = f.ring();
  if (R.size() > max_size) throw CapExceeded("polynomial oracle limited to rings of " + std::to_string(max_size) + " elements");
  std::uint64_t d = 0;
  for (const auto& k : R.ring().factors()) d = std::max(d, k.field().order());
  std::vector<std::uint64_t> idx(d, 0);
  for (;;) {
    std::vector<ProductElem> coeffs;
    for (auto c : idx) coeffs.push_back(R.element(c));
    PolyMap F(R.ring(), std::move(coeffs));
    bool match = true;
    for (std::uint64_t i = 0; i < R.size() && match; ++i) match = F(R.element(i)) == R.element(f.image(i));
    if (match) return F;
    std::size_t k = 0;
    while (k < d && ++idx[k] == R.size()) idx[k++] = 0;
    if (k == d) return std::nullopt;
  }
}

std::vector<MapTable> enumerate_contractive(std::shared_ptr<const EnumeratedRing> ring, std::uint64_t cap) {
  const std::size_t A = ring->atoms();
  std::vector<std::uint64_t> choices(A);
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < A; ++a) {
    const std::uint64_t q = ring->radix(a);
    choices[a] = 1;
    for (std::uint64_t k = 0; k < q; ++k) {
      if (choices[a] > cap) break;
      choices[a] *= q;
    }
    if (choices[a] > cap || total > cap / choices[a])
      throw CapExceeded("more than " + std::to_string(cap) + " contractive maps");
    total *= choices[a];
  }
  // phi_a(c) = digit c of t_a in base q_a.
  auto apply = [&](std::uint64_t t, std::uint64_t q, std::uint32_t c) {
    for (std::uint32_t k = 0; k < c; ++k) t /= q;
    return static_cast<std::uint32_t>(t % q);
  };
  std::vector<MapTable> out;
  out.reserve(total);
  std::vector<std::uint64_t> t(A, 0);
  std::vector<std::uint32_t> digits(A);
  for (std::uint64_t m = 0; m < total; ++m) {
    std::vector<std::uint64_t> images(ring->size());
    for (std::uint64_t i = 0; i < ring->size(); ++i) {
      for (std::size_t a = 0; a < A; ++a) digits[a] = apply(t[a], ring->radix(a), ring->digit(i, a));
      images[i] = ring->from_digits(digits);
    }
    out.emplace_back(ring, std::move(images));
    std::size_t k = 0;
    while (k < A && ++t[k] == choices[k]) t[k++] = 0;
  }
  return out;
}

}  // namespace cfgring
