#pragma once

// Naive reference implementations used only by the tests. Nothing here calls
// into the library's arithmetic: fields are polynomial arithmetic written out
// by hand, ring elements are plain per-atom code vectors.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Poly = std::vector<std::uint64_t>;  // constant term first

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Poly poly_rem(Poly a, const Poly& m, std::uint64_t p) {
  while (a.size() >= m.size()) {
    const std::uint64_t c = a.back() % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
    a.pop_back();
  }
  return a;
}

// Monic f has a monic factor of degree 1..deg/2 (trial division).
inline bool has_factor(const Poly& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(d + 1, 1);
      std::uint64_t r = c;
      for (std::size_t i = 0; i < d; ++i, r /= p) g[i] = r % p;
      const Poly rem = poly_rem(f, g, p);
      bool zero = true;
      for (auto v : rem) zero = zero && v == 0;
      if (zero) return true;
    }
  }
  return false;
}

struct NaiveField {
  std::uint64_t p = 2;
  unsigned n = 1;
  std::uint64_t q = 2;
  Poly modulus;

  NaiveField(std::uint64_t p_, unsigned n_) : p(p_), n(n_), q(1) {
    for (unsigned i = 0; i < n; ++i) q *= p;
    if (n == 1) {
      modulus = {0, 1};
      return;
    }
    for (std::uint64_t c = 0; c < q; ++c) {
      Poly f = digits(c);
      f.push_back(1);
      if (f[0] != 0 && !has_factor(f, p)) {
        modulus = f;
        return;
      }
    }
    throw std::logic_error("no irreducible modulus");
  }

  Poly digits(std::uint64_t c) const {
    Poly d(n);
    for (unsigned i = 0; i < n; ++i, c /= p) d[i] = c % p;
    return d;
  }
  std::uint64_t code(const Poly& d) const {
    std::uint64_t c = 0, w = 1;
    for (unsigned i = 0; i < n && i < d.size(); ++i, w *= p) c += (d[i] % p) * w;
    return c;
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    Poly x = digits(a), y = digits(b);
    for (unsigned i = 0; i < n; ++i) x[i] = (x[i] + y[i]) % p;
    return code(x);
  }
  std::uint64_t neg(std::uint64_t a) const {
    Poly x = digits(a);
    for (auto& v : x) v = (p - v) % p;
    return code(x);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const Poly x = digits(a), y = digits(b);
    Poly prod(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    return code(n == 1 ? prod : poly_rem(prod, modulus, p));
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    for (std::uint64_t b = 1; b < q; ++b)
      if (mul(a, b) == 1) return b;
    throw std::domain_error("no inverse");
  }
  std::uint64_t eval(const Poly& coeffs, std::uint64_t x) const {
    std::uint64_t r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = add(mul(r, x), *it);
    return r;
  }
};

// A finite product of fields, one entry per atom, elements as code vectors.
struct AtomRing {
  std::vector<NaiveField> at;  // field at each atom

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (const auto& f : at) s *= f.q;
    return s;
  }
  // Index order: first atom varies fastest.
  std::vector<std::uint64_t> element(std::uint64_t idx) const {
    std::vector<std::uint64_t> v(at.size());
    for (std::size_t j = 0; j < at.size(); ++j) {
      v[j] = idx % at[j].q;
      idx /= at[j].q;
    }
    return v;
  }
  std::uint64_t index(const std::vector<std::uint64_t>& v) const {
    std::uint64_t idx = 0, w = 1;
    for (std::size_t j = 0; j < at.size(); ++j) {
      idx += v[j] * w;
      w *= at[j].q;
    }
    return idx;
  }
  std::vector<std::uint64_t> add(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) const {
    std::vector<std::uint64_t> r(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) r[j] = at[j].add(x[j], y[j]);
    return r;
  }
  std::vector<std::uint64_t> mul(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) const {
    std::vector<std::uint64_t> r(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) r[j] = at[j].mul(x[j], y[j]);
    return r;
  }
  std::vector<std::uint64_t> constant(std::uint64_t c) const {
    std::vector<std::uint64_t> r(at.size());
    for (std::size_t j = 0; j < at.size(); ++j) r[j] = c % at[j].q;
    return r;
  }
  std::vector<std::uint64_t> minus_one() const {
    std::vector<std::uint64_t> r(at.size());
    for (std::size_t j = 0; j < at.size(); ++j) r[j] = at[j].neg(1);
    return r;
  }
  // Bitmask of atoms where x and y differ: the support e(x - y).
  std::uint64_t diff(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) const {
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (at[j].sub(x[j], y[j]) != 0) m |= std::uint64_t{1} << j;
    return m;
  }
};

// e(f(x) - f(y)) <= e(x - y) over all pairs, straight from the definition.
inline bool contractive(const AtomRing& R, const std::vector<std::uint64_t>& images) {
  const std::uint64_t N = R.size();
  std::vector<std::vector<std::uint64_t>> el(N);
  for (std::uint64_t i = 0; i < N; ++i) el[i] = R.element(i);
  for (std::uint64_t i = 0; i < N; ++i)
    for (std::uint64_t j = i + 1; j < N; ++j) {
      const auto dx = R.diff(el[i], el[j]);
      const auto df = R.diff(el[images[i]], el[images[j]]);
      if ((df & ~dx) != 0) return false;
    }
  return true;
}

// Every contractive self-map, found by backtracking over the definition.
inline std::vector<std::vector<std::uint64_t>> contractive_maps(const AtomRing& R) {
  const std::uint64_t N = R.size();
  std::vector<std::vector<std::uint64_t>> el(N);
  for (std::uint64_t i = 0; i < N; ++i) el[i] = R.element(i);
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> f(N);
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t i) {
    if (i == N) {
      out.push_back(f);
      return;
    }
    for (std::uint64_t v = 0; v < N; ++v) {
      bool ok = true;
      for (std::uint64_t j = 0; j < i && ok; ++j)
        ok = (R.diff(el[v], el[f[j]]) & ~R.diff(el[i], el[j])) == 0;
      if (!ok) continue;
      f[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Closure of gens, 0, 1, -1 under + and *: every element is combined with
// every element found before it, each pair once.
inline std::set<std::vector<std::uint64_t>> closure(const AtomRing& R,
                                                    const std::vector<std::vector<std::uint64_t>>& gens) {
  std::set<std::vector<std::uint64_t>> T;
  std::vector<std::vector<std::uint64_t>> order;
  auto push = [&](std::vector<std::uint64_t> v) {
    if (T.insert(v).second) order.push_back(std::move(v));
  };
  push(R.constant(0));
  push(R.constant(1));
  push(R.minus_one());
  for (const auto& g : gens) push(g);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const auto a = order[i], b = order[j];
      push(R.add(a, b));
      push(R.mul(a, b));
    }
  return T;
}

// Signature of conv(T): A/p_j is the residue set {t(j) : t in T}, a subfield
// of order p^d. Returns (p, d) -> number of atoms.
inline std::map<std::pair<std::uint64_t, unsigned>, std::uint64_t> residue_signature(
    const AtomRing& R, const std::set<std::vector<std::uint64_t>>& T) {
  std::map<std::pair<std::uint64_t, unsigned>, std::uint64_t> sig;
  for (std::size_t j = 0; j < R.at.size(); ++j) {
    std::set<std::uint64_t> res;
    for (const auto& t : T) res.insert(t[j]);
    std::uint64_t size = res.size();
    unsigned d = 0;
    while (size > 1) {
      if (size % R.at[j].p != 0) throw std::logic_error("residue set is not a field");
      size /= R.at[j].p;
      ++d;
    }
    ++sig[{R.at[j].p, d}];
  }
  return sig;
}

}  // namespace oracle
