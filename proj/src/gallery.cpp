#include "cfgring/gallery.hpp"

#include <algorithm>
#include <map>

namespace cfgring {

// ---------------------------------------------------------------------------
// Field assignments

VraciuReport vraciu_build(const FieldAssignment& fa) {
  if (fa.assign.empty()) throw InputError("empty field assignment");
  const std::uint64_t p = fa.assign.front().characteristic();
  std::map<FieldClass, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < fa.assign.size(); ++j) {
    const auto& K = fa.assign[j];
    if (K.characteristic() != p)
      throw InputError("mixed characteristic: atom " + std::to_string(j) + " has " + K.to_string());
    groups[FieldClass{K.characteristic(), K.degree()}].push_back(j);
  }
  std::vector<KBRing> factors;
  std::vector<std::pair<std::size_t, std::size_t>> location(fa.assign.size());
  for (const auto& [cls, atoms] : groups) {
    for (std::size_t a = 0; a < atoms.size(); ++a) location[atoms[a]] = {factors.size(), a};
    factors.emplace_back(FiniteField::make(cls.p, cls.n), BooleanRing(atoms.size()));
  }
  VraciuReport r{ProductRing(std::move(factors)), std::move(location), {}, 0, {}, false};
  r.signature = ambient_signature(r.ring);
  r.idempotent_atoms = r.ring.total_atoms();
  bool ok = r.idempotent_atoms == fa.assign.size();
  for (std::size_t j = 0; j < fa.assign.size(); ++j) {
    const auto [f, a] = r.location[j];
    const KBRing& factor = r.ring.factor(f);
    // Residues of the scalars at this prime.
    std::vector<bool> seen(factor.field().order(), false);
    std::uint64_t distinct = 0;
    for (std::uint64_t c = 0; c < factor.field().order(); ++c) {
      const auto v = kb_eval_at_prime(factor.scalar(c), a).code();
      if (!seen[v]) {
        seen[v] = true;
        ++distinct;
      }
    }
    r.quotient_sizes.push_back(distinct);
    ok = ok && factor.field() == fa.assign[j] && distinct == fa.assign[j].order();
  }
  r.ok = ok;
  return r;
}

std::string VraciuReport::to_string() const {
  std::string out = "ring: " + ring.to_string() + "\n";
  out += "signature: " + signature.to_string() + "\n";
  out += "idempotent atoms: " + std::to_string(idempotent_atoms) + "\n";
  out += "quotient sizes:";
  for (auto s : quotient_sizes) out += " " + std::to_string(s);
  out += "\n";
  out += std::string("quotients match the assignment: ") + (ok ? "yes" : "no") + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Tower ring

std::size_t tower_max_atoms(std::uint64_t q) {
  if (q == 2) return 4;
  if (q == 3) return 3;
  return 0;
}

TowerRing::TowerRing(std::uint64_t q, std::size_t N, std::vector<FiniteField> tower, KBRing ambient)
    : q_(q), N_(N), tower_(std::move(tower)), ambient_(std::move(ambient)) {
  const auto& U = tower_.back();
  for (const auto& F : tower_) {
    auto codes = FieldEmbedding::make(F, U).image_table();
    std::vector<bool> in(U.order(), false);
    for (auto c : codes) in[c] = true;
    std::sort(codes.begin(), codes.end());
    subfield_.push_back(std::move(codes));
    member_of_.push_back(std::move(in));
  }
}

TowerRing TowerRing::build(std::uint64_t q, std::size_t N) {
  if (q != 2 && q != 3) throw InputError("tower rings are built for q = 2 or 3");
  if (N < 1 || N > tower_max_atoms(q))
    throw InputError("tower atom count must be in [1, " + std::to_string(tower_max_atoms(q)) + "] for q = " +
                     std::to_string(q));
  std::vector<FiniteField> tower;
  for (std::size_t i = 0; i <= N; ++i) tower.push_back(FiniteField::make(q, 1u << i));
  KBRing ambient(tower.back(), BooleanRing(N));
  return TowerRing(q, N, std::move(tower), std::move(ambient));
}

BoolElem TowerRing::ideal_top(std::size_t i) const {
  BoolElem b(ambient_.bool_ring());
  if (i <= N_) b.set_range(i - 1, N_);
  return b;
}

std::optional<std::size_t> TowerRing::violated_level(const StepElem& u) const {
  if (!(u.ring() == ambient_)) throw InputError("element is not a step function on " + ambient_.to_string());
  for (std::size_t i = 1; i <= N_ + 1; ++i) {
    BoolElem outside(ambient_.bool_ring());
    for (const auto& b : u.blocks())
      if (!in_subfield(i, b.value)) outside |= b.part;
    if (!outside.leq(ideal_top(i))) return i;
  }
  return std::nullopt;
}

bool TowerRing::member(const StepElem& u) const { return !violated_level(u); }

bool TowerRing::member_normal_form(const StepElem& u) const {
  if (!(u.ring() == ambient_)) throw InputError("element is not a step function on " + ambient_.to_string());
  // Fields grow with the atom index, so a block is constrained by its first atom.
  for (const auto& b : u.blocks())
    if (!in_subfield(b.part.first_atom() + 2, b.value)) return false;
  return true;
}

StepElem TowerRing::random_member(std::mt19937_64& rng) const {
  std::vector<std::uint64_t> vals(N_);
  for (std::size_t a = 0; a < N_; ++a) {
    const auto& codes = subfield(a + 2);
    vals[a] = codes[rng() % codes.size()];
  }
  return ambient_.from_values(vals);
}

StepElem TowerRing::random_element(std::mt19937_64& rng) const {
  std::vector<std::uint64_t> vals(N_);
  for (auto& v : vals) v = rng() % universe().order();
  return ambient_.from_values(vals);
}

TowerReport tower_verify(const TowerRing& tr, const TowerOptions& opts) {
  TowerReport r;
  r.q = tr.q();
  r.N = tr.atoms();
  const auto& U = tr.universe();
  const std::size_t N = tr.atoms();
  std::mt19937_64 rng(opts.seed);

  r.embeddings_coherent = true;
  for (std::size_t i = 1; i <= N; ++i) {
    const auto step = FieldEmbedding::make(tr.tower()[i - 1], tr.tower()[i]);
    const auto up = FieldEmbedding::make(tr.tower()[i], U);
    const auto direct = FieldEmbedding::make(tr.tower()[i - 1], U);
    for (std::uint64_t c = 0; c < tr.tower()[i - 1].order(); ++c)
      if (up.map_code(step.map_code(c)) != direct.map_code(c)) r.embeddings_coherent = false;
  }
  if (!r.embeddings_coherent) r.failures.push_back("tower embeddings do not compose");

  // Membership: ideal condition against the per-atom normal form.
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < N && total <= opts.membership_exhaustive_cap; ++a) total *= U.order();
  r.membership_exhaustive = total <= opts.membership_exhaustive_cap;
  r.membership_agrees = true;
  auto check_member = [&](const StepElem& u) {
    ++r.membership_checked;
    const bool m = tr.member(u);
    if (m) ++r.membership_members;
    if (m != tr.member_normal_form(u)) {
      if (r.membership_agrees) r.failures.push_back("membership conditions disagree at " + u.to_string());
      r.membership_agrees = false;
    }
  };
  if (r.membership_exhaustive) {
    std::vector<std::uint64_t> vals(N, 0);
    for (std::uint64_t i = 0; i < total; ++i) {
      std::uint64_t x = i;
      for (auto& v : vals) {
        v = x % U.order();
        x /= U.order();
      }
      check_member(tr.ambient().from_values(vals));
    }
  } else {
    for (std::uint64_t s = 0; s < opts.samples; ++s)
      check_member(s % 2 ? tr.random_member(rng) : tr.random_element(rng));
  }

  // Closure under the ring operations.
  std::vector<StepElem> members;
  std::uint64_t count = 1;
  for (std::size_t a = 0; a < N; ++a) count *= tr.subfield(a + 2).size();
  r.closure_exhaustive = count * count <= opts.closure_exhaustive_cap;
  r.closure = tr.member(tr.ambient().zero()) && tr.member(tr.ambient().one());
  auto check_pair = [&](const StepElem& x, const StepElem& y) {
    ++r.closure_pairs;
    if (tr.member(x + y) && tr.member(x * y) && tr.member(-x)) return;
    if (r.closure) r.failures.push_back("not closed at " + x.to_string() + ", " + y.to_string());
    r.closure = false;
  };
  if (r.closure_exhaustive) {
    std::vector<std::uint64_t> vals(N, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t x = i;
      for (std::size_t a = 0; a < N; ++a) {
        const auto& codes = tr.subfield(a + 2);
        vals[a] = codes[x % codes.size()];
        x /= codes.size();
      }
      members.push_back(tr.ambient().from_values(vals));
    }
    for (const auto& x : members)
      for (const auto& y : members) check_pair(x, y);
  } else {
    for (std::uint64_t s = 0; s < opts.samples; ++s) check_pair(tr.random_member(rng), tr.random_member(rng));
  }
  if (!r.closure && r.failures.empty()) r.failures.push_back("0 or 1 is not a member");

  // Quotient at atom a: residues of members at a.
  for (std::size_t a = 0; a < N; ++a) {
    std::uint64_t size = 0;
    for (std::uint64_t c = 0; c < U.order(); ++c) {
      BoolElem at(tr.ambient().bool_ring());
      at.set(a);
      std::vector<Block> blocks{Block{at, c}, Block{at.complement(), 0}};
      if (tr.member(StepElem::from_blocks(tr.ambient(), std::move(blocks)))) ++size;
    }
    r.quotient_sizes.push_back(size);
    if (size != tr.subfield(a + 2).size())
      r.failures.push_back("quotient at atom " + std::to_string(a) + " has " + std::to_string(size) + " elements");
    r.max_quotient = std::max(r.max_quotient, size);
  }
  return r;
}

bool tower_growth(std::span<const TowerReport> reports) {
  for (std::size_t i = 1; i < reports.size(); ++i)
    if (reports[i].max_quotient <= reports[i - 1].max_quotient) return false;
  return true;
}

std::string TowerReport::to_string() const {
  std::string out = "tower q=" + std::to_string(q) + " N=" + std::to_string(N) + "\n";
  out += std::string("embeddings coherent: ") + (embeddings_coherent ? "yes" : "no") + "\n";
  out += std::string("membership conditions agree: ") + (membership_agrees ? "yes" : "no") + " (" +
         (membership_exhaustive ? "exhaustive" : "sampled") + ", " + std::to_string(membership_checked) +
         " elements, " + std::to_string(membership_members) + " members)\n";
  out += std::string("closed under +, *, -: ") + (closure ? "yes" : "no") + " (" +
         (closure_exhaustive ? "exhaustive" : "sampled") + ", " + std::to_string(closure_pairs) + " pairs)\n";
  out += "quotient sizes:";
  for (auto s : quotient_sizes) out += " " + std::to_string(s);
  out += "\nmax quotient: " + std::to_string(max_quotient) + "\n";
  for (const auto& f : failures) out += "FAIL " + f + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// GF(4)

Gf4KernelReport gf4_kernel_check() {
  const auto K = FiniteField::make(2, 2);
  const std::uint64_t g = K.generator().code();
  Gf4KernelReport r;
  r.relation_holds = true;
  for (std::uint64_t t = 0; t < 4; ++t) {
    const auto quad = K.add(K.add(K.mul(t, t), t), 1);
    if (K.mul(K.mul(t, K.add(t, 1)), quad) != 0) r.relation_holds = false;
    r.h.push_back(K.mul(K.mul(t, K.add(t, 1)), K.add(t, g)));
  }
  r.h_as_stated = r.h[g] == 0 && r.h[K.add(g, 1)] != 0;
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    std::vector<std::uint64_t> coeffs;
    for (int i = 0; i < 4; ++i) coeffs.push_back((bits >> i) & 1);
    std::size_t miss = 0;
    for (std::uint64_t t = 0; t < 4; ++t)
      if (ff_poly_eval(K, coeffs, t) != r.h[t]) ++miss;
    r.mismatches.push_back(miss);
    ++r.candidates;
    if (miss) ++r.rejected;
  }
  return r;
}

std::string Gf4KernelReport::to_string() const {
  const auto K = FiniteField::make(2, 2);
  std::string out = std::string("t(t+1)(t^2+t+1) = 0 on GF(4): ") + (relation_holds ? "yes" : "no") + "\n";
  out += "h(t) = t(t+1)(t+g):";
  for (std::uint64_t t = 0; t < h.size(); ++t) out += " h(" + K.format(t) + ")=" + K.format(h[t]);
  out += "\n";
  out += std::string("h(g) = 0 and h(g+1) != 0: ") + (h_as_stated ? "yes" : "no") + "\n";
  out += "polynomials over {0,1} of degree <= 3 rejected: " + std::to_string(rejected) + "/" +
         std::to_string(candidates) + "\n";
  return out;
}

Gf4SequenceReport gf4_sequence_demo(std::size_t N, std::size_t k) {
  if (N > 6 || k < 1 || k >= N) throw InputError("gf4-sequence needs 1 <= k < N <= 6");
  const auto K4 = FiniteField::make(2, 2);
  const auto K2 = FiniteField::make(2, 1);
  const KBRing ambient(K4, BooleanRing(N));
  const ProductRing A({KBRing(K4, BooleanRing(k)), KBRing(K2, BooleanRing(N - k))});
  const auto R = enumerate(A);

  auto embed = [&](const ProductElem& x) { return ambient.from_values(x.values()); };
  auto pull = [&](const StepElem& y) -> std::optional<ProductElem> {
    auto v = y.values();
    for (std::size_t a = k; a < N; ++a)
      if (v[a] > 1) return std::nullopt;
    std::vector<std::uint64_t> head(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<std::uint64_t> tail(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return A.from_parts({A.factor(0).from_values(head), A.factor(1).from_values(tail)});
  };
  const StepElem ghat = ambient.scalar(K4.generator());
  auto f_ambient = [&](const StepElem& y) { return y * (y + ambient.one()) * (y + ghat); };

  Gf4SequenceReport r;
  r.N = N;
  r.k = k;
  r.ring = A.to_string();
  r.ring_size = R->size();
  for (std::size_t a = 0; a < N; ++a) r.quotient_sizes.push_back(a < k ? 4 : 2);
  r.quotients_bounded = std::all_of(r.quotient_sizes.begin(), r.quotient_sizes.end(), [](auto s) { return s <= 4; });

  r.relation_holds = true;
  r.maps_into = true;
  std::vector<std::uint64_t> images(R->size());
  for (std::uint64_t i = 0; i < R->size(); ++i) {
    const auto& x = R->element(i);
    const auto one = A.one();
    if (!(x * (x + one) * (x * x + x + one)).is_zero()) r.relation_holds = false;
    const auto y = pull(f_ambient(embed(x)));
    if (!y) {
      r.maps_into = false;
      images[i] = i;
      continue;
    }
    images[i] = R->index_of(*y);
  }
  const MapTable f(R, std::move(images));
  r.contractive = r.maps_into && is_contractive(f).holds;

  const auto h = gf4_kernel_check().h;
  r.h_on_g = r.maps_into;
  for (std::uint64_t t = 0; t < 4 && r.h_on_g; ++t) {
    const auto x = A.in_factor(0, A.factor(0).scalar(t));
    if (f(x).part(0) != A.factor(0).scalar(h[t])) r.h_on_g = false;
  }
  if (r.contractive) r.truncation_witness = contractive_to_poly(f);
  return r;
}

std::string Gf4SequenceReport::to_string() const {
  auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
  std::string out = "A(" + std::to_string(N) + "," + std::to_string(k) + ") = " + ring + " (" +
                    std::to_string(ring_size) + " elements)\n";
  out += "quotient sizes:";
  for (auto s : quotient_sizes) out += " " + std::to_string(s);
  out += "\nall quotients <= 4: " + yn(quotients_bounded) + "\n";
  out += "x(x+1)(x^2+x+1) = 0 on A: " + yn(relation_holds) + "\n";
  out += "f(x) = x(x+1)(x+g) maps A into A: " + yn(maps_into) + "\n";
  out += "f contractive: " + yn(contractive) + "\n";
  out += "f agrees with h on the GF(4) scalars: " + yn(h_on_g) + "\n";
  out += "experiment, finite truncation: ";
  out += truncation_witness ? "f is polynomial here, witness " + truncation_witness->to_string() + "\n"
                            : "no polynomial witness\n";
  return out;
}

}  // namespace cfgring
