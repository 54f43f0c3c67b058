#include "cfgring/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "cfgring/cfg_check.hpp"
#include "cfgring/gallery.hpp"
#include "cfgring/selftest.hpp"
#include "cfgring/text.hpp"

namespace cfgring {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Workspace

void Workspace::bind(const std::string& name, Binding value) {
  if (name.empty() || name.find_first_of(" \t\n=@") != std::string::npos)
    throw InputError("invalid binding name '" + name + "'");
  bindings_.insert_or_assign(name, std::move(value));
}

const Binding* Workspace::find(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::string Workspace::serialize() const {
  std::string out;
  for (const auto& [name, value] : bindings_) {
    std::visit(
        [&, &name = name](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, ProductRing>) {
            out += "ring " + name + " = " + v.to_string() + "\n";
          } else if constexpr (std::is_same_v<T, ProductElem>) {
            out += "elem " + name + " in " + v.ring().to_string() + " = " + v.to_string() + "\n";
          } else if constexpr (std::is_same_v<T, RingSignature>) {
            out += "sig " + name + " = " + v.to_string() + "\n";
          } else if constexpr (std::is_same_v<T, PolyMap>) {
            out += "poly " + name + " on " + v.ring().to_string() + " = " + v.to_string() + "\n";
          } else {
            std::string table = v.to_text();
            out += "map " + name + table.substr(3) + "end\n";
          }
        },
        value);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "NAME in|on RING = VALUE": splits at the first " = ".
struct Decl {
  std::string name;
  std::string ring;
  std::string value;
};

Decl split_decl(std::string_view rest, std::string_view joiner, std::size_t line) {
  const auto eq = rest.find(" = ");
  const auto sp = rest.find(' ');
  if (eq == std::string_view::npos || sp == std::string_view::npos)
    throw InputError("workspace line " + std::to_string(line) + ": malformed declaration");
  Decl d;
  d.name = std::string(rest.substr(0, sp));
  d.value = std::string(trim(rest.substr(eq + 3)));
  if (!joiner.empty()) {
    auto mid = trim(rest.substr(sp, eq - sp));
    if (mid.substr(0, joiner.size()) != joiner)
      throw InputError("workspace line " + std::to_string(line) + ": expected '" + std::string(joiner) + "'");
    d.ring = std::string(trim(mid.substr(joiner.size())));
  }
  return d;
}

}  // namespace

Workspace Workspace::parse(std::string_view text, std::uint64_t table_cap) {
  Workspace ws;
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto sp = line.find(' ');
    const auto kind = line.substr(0, sp);
    const auto rest = sp == std::string_view::npos ? std::string_view() : trim(line.substr(sp));
    if (kind == "ring") {
      auto d = split_decl(rest, "", i + 1);
      ws.bind(d.name, ProductRing::parse(d.value));
    } else if (kind == "elem") {
      auto d = split_decl(rest, "in ", i + 1);
      ws.bind(d.name, ProductRing::parse(d.ring).parse_element(d.value));
    } else if (kind == "sig") {
      auto d = split_decl(rest, "", i + 1);
      ws.bind(d.name, RingSignature::parse(d.value));
    } else if (kind == "poly") {
      auto d = split_decl(rest, "on ", i + 1);
      ws.bind(d.name, PolyMap::parse(ProductRing::parse(d.ring), d.value));
    } else if (kind == "map") {
      const auto sp2 = rest.find(' ');
      if (sp2 == std::string_view::npos) throw InputError("workspace line " + std::to_string(i + 1) + ": malformed map");
      const std::string name(rest.substr(0, sp2));
      std::string table = "map" + std::string(rest.substr(sp2)) + "\n";
      std::size_t j = i + 1;
      for (; j < lines.size() && trim(lines[j]) != "end"; ++j) table += std::string(lines[j]) + "\n";
      if (j == lines.size()) throw InputError("workspace map '" + name + "' has no closing 'end'");
      ws.bind(name, MapTable::parse(table, table_cap));
      i = j;
    } else {
      throw InputError("workspace line " + std::to_string(i + 1) + ": unknown declaration '" + std::string(kind) + "'");
    }
  }
  return ws;
}

Workspace Workspace::load(const std::string& path, std::uint64_t table_cap) {
  if (!std::filesystem::exists(path)) return Workspace{};
  return parse(read_file(path), table_cap);
}

void Workspace::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << serialize();
}

bool operator==(const Workspace& a, const Workspace& b) {
  if (a.bindings().size() != b.bindings().size()) return false;
  for (const auto& [name, v] : a.bindings()) {
    const auto* w = b.find(name);
    if (!w || w->index() != v.index()) return false;
    const bool same = std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          return x == std::get<T>(*w);
        },
        v);
    if (!same) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::uint64_t table_cap = kDefaultTableCap;
  std::uint64_t atom_cap = kMaxAtoms;
  std::uint64_t subring_cap = kDefaultSubringCap;
  std::string workspace;
  std::string as;
};

struct Outcome {
  int code = kExitOk;
  std::string report;
  json summary = json::object();
  std::optional<Binding> result;
};

class Context {
 public:
  Context(const Globals& g) : g_(g) {
    if (!g_.workspace.empty()) ws_ = Workspace::load(g_.workspace, g_.table_cap);
  }

  const Globals& globals() const { return g_; }
  Workspace& workspace() { return ws_; }

  ProductRing ring(const std::string& arg) const {
    ProductRing r = [&] {
      if (!arg.empty() && arg.front() == '@') {
        const auto* b = lookup(arg);
        if (const auto* r = std::get_if<ProductRing>(b)) return *r;
        throw InputError("'" + arg + "' is not a ring");
      }
      return ProductRing::parse(arg);
    }();
    if (r.total_atoms() > g_.atom_cap)
      throw CapExceeded("ring has " + std::to_string(r.total_atoms()) + " atoms, above the atom cap " +
                        std::to_string(g_.atom_cap));
    return r;
  }

  ProductElem elem(const ProductRing& ring, const std::string& arg) const {
    if (!arg.empty() && arg.front() == '@') {
      const auto* b = lookup(arg);
      const auto* e = std::get_if<ProductElem>(b);
      if (!e) throw InputError("'" + arg + "' is not an element");
      if (!(e->ring() == ring)) throw InputError("'" + arg + "' lives in " + e->ring().to_string());
      return *e;
    }
    return ring.parse_element(arg);
  }

  std::vector<ProductElem> elems(const ProductRing& ring, const std::vector<std::string>& args) const {
    std::vector<ProductElem> out;
    for (const auto& a : args) out.push_back(elem(ring, a));
    return out;
  }

  /// A map given as @name, a file, or inline text ("map on ..." / "poly on R = ...").
  std::variant<MapTable, PolyMap> map(const std::string& arg) const {
    if (!arg.empty() && arg.front() == '@') {
      const auto* b = lookup(arg);
      if (const auto* t = std::get_if<MapTable>(b)) return *t;
      if (const auto* p = std::get_if<PolyMap>(b)) return *p;
      throw InputError("'" + arg + "' is not a map");
    }
    std::string text = arg;
    if (std::filesystem::is_regular_file(arg)) text = read_file(arg);
    const auto t = trim(text);
    if (t.substr(0, 8) == "poly on ") {
      const auto eq = t.find(" = ");
      if (eq == std::string_view::npos) throw InputError("expected 'poly on <ring> = poly[...]'");
      const auto r = ring(std::string(trim(t.substr(8, eq - 8))));
      return PolyMap::parse(r, trim(t.substr(eq + 3)));
    }
    if (t.substr(0, 7) == "map on ") {
      auto table = MapTable::parse(t, g_.table_cap);
      if (table.ring().ring().total_atoms() > g_.atom_cap) throw CapExceeded("map ring above the atom cap");
      return table;
    }
    throw InputError("cannot read a map from '" + arg + "' (not a binding, a file, or map text)");
  }

  MapTable table(const std::variant<MapTable, PolyMap>& m) const {
    if (const auto* t = std::get_if<MapTable>(&m)) return *t;
    const auto& p = std::get<PolyMap>(m);
    return MapTable::from_poly(enumerate(p.ring(), g_.table_cap), p);
  }

 private:
  const Binding* lookup(const std::string& arg) const {
    const auto* b = ws_.find(arg.substr(1));
    if (!b) throw InputError("no workspace binding named '" + arg.substr(1) + "'");
    return b;
  }
  Globals g_;
  Workspace ws_;
};

json sig_json(const RingSignature& sig) {
  json entries = json::array();
  for (const auto& [f, a] : sig.entries())
    entries.push_back({{"field", f.to_string()}, {"p", f.p}, {"n", f.n}, {"atoms", a}});
  return {{"text", sig.to_string()}, {"entries", entries}};
}

std::string gens_text(const std::vector<ProductElem>& gens) {
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) out += "  x" + std::to_string(i + 1) + " = " + gens[i].to_string() + "\n";
  return out;
}

json gens_json(const std::vector<ProductElem>& gens) {
  json a = json::array();
  for (const auto& g : gens) a.push_back(g.to_string());
  return a;
}

Outcome ring_new(Context& ctx, const std::string& spec) {
  const auto R = ctx.ring(spec);
  Outcome o;
  const auto size = R.size();
  o.report = "ring: " + R.to_string() + "\n";
  o.report += "factors: " + std::to_string(R.factor_count()) + ", atoms: " + std::to_string(R.total_atoms()) + "\n";
  o.report += "size: " + (size ? std::to_string(*size) : std::string("more than 2^62")) + "\n";
  o.report += "signature: " + ambient_signature(R).to_string() + "\n";
  o.summary = {{"ring", R.to_string()},
               {"factors", R.factor_count()},
               {"atoms", R.total_atoms()},
               {"size", size ? json(*size) : json(nullptr)},
               {"signature", sig_json(ambient_signature(R))}};
  o.result = R;
  return o;
}

Outcome ring_decompose(Context& ctx, const std::string& spec, const std::vector<std::string>& gen_args) {
  const auto R = ctx.ring(spec);
  const auto gens = gen_args.empty() ? factor_generators(R) : ctx.elems(R, gen_args);
  const auto d = structure_decompose(SubringPresentation{R, gens}, ctx.globals().subring_cap);
  Outcome o;
  o.report = "ambient: " + R.to_string() + "\n";
  o.report += "generators (with 0 and 1):\n" + gens_text(gens);
  o.report += "generated subring: " + std::to_string(d.subring_size) + " elements\n";
  o.report += "signature: " + d.signature.to_string() + "\n";
  o.report += "blocks:\n" + d.witness_text();
  json blocks = json::array();
  for (const auto& b : d.blocks) {
    json atoms = json::array();
    for (const auto& a : b.atoms) atoms.push_back(a.to_string());
    blocks.push_back({{"field", b.component.field.to_string()},
                      {"idempotent", b.component.idempotent.to_string()},
                      {"atoms", atoms},
                      {"atom_count", b.atom_count}});
  }
  o.summary = {{"ambient", R.to_string()},
               {"generators", gens_json(gens)},
               {"subring_size", d.subring_size},
               {"signature", sig_json(d.signature)},
               {"blocks", blocks}};
  o.result = d.signature;
  return o;
}

Outcome ring_check(Context& ctx, const std::string& spec, const std::string& what,
                   const std::vector<std::string>& gen_args) {
  const auto R = ctx.ring(spec);
  Outcome o;
  if (what == "cfg") {
    const auto gens = gen_args.empty() ? covering_scalars(R) : ctx.elems(R, gen_args);
    CfgCheckOptions opts;
    opts.seed = ctx.globals().seed;
    opts.exhaustive_cap = ctx.globals().table_cap;
    const auto r = cfg_witness_check(R, gens, opts);
    o.report = "ring: " + R.to_string() + "\ngenerators:\n" + gens_text(gens) + r.to_string(R);
    json unc = json::array();
    for (const auto& u : r.uncovered)
      unc.push_back({{"factor", u.factor}, {"atom", u.atom}, {"missing", R.factor(u.factor).field().format(u.missing)}});
    o.summary = {{"ring", R.to_string()},
                 {"generators", gens_json(gens)},
                 {"holds", r.holds},
                 {"uncovered_atoms", r.uncovered_atoms},
                 {"uncovered", unc},
                 {"product_check", {{"exhaustive", r.exhaustive}, {"checked", r.product_checked}, {"vanishes", r.product_vanishes}}},
                 {"consistent", r.consistent()}};
    if (!r.consistent()) throw std::logic_error("residue coverage and the product condition disagree");
    o.code = r.holds ? kExitOk : kExitFails;
  } else if (what == "char") {
    const auto c = ring_char(R);
    const auto blocks = char_decompose(R);
    o.report = "ring: " + R.to_string() + "\ncharacteristic: " + std::to_string(c) + "\n";
    json jb = json::array();
    std::vector<ProductElem> idem;
    for (const auto& b : blocks) {
      o.report += "  char " + std::to_string(b.prime) + ": idempotent " + b.idempotent.to_string() + ", signature " +
                  b.signature.to_string() + "\n";
      jb.push_back({{"prime", b.prime}, {"idempotent", b.idempotent.to_string()}, {"factors", b.factors},
                    {"signature", sig_json(b.signature)}});
      idem.push_back(b.idempotent);
    }
    const bool cfoi = product_cfoi_check(idem);
    o.report += std::string("block idempotents form a c.f.o.i.: ") + (cfoi ? "yes" : "no") + "\n";
    o.summary = {{"ring", R.to_string()}, {"characteristic", c}, {"blocks", jb}, {"cfoi", cfoi}};
    if (!cfoi) throw std::logic_error("characteristic blocks are not a c.f.o.i.");
  } else if (what == "quotients") {
    constexpr std::size_t kListed = 64;
    o.report = "ring: " + R.to_string() + "\nprimes: " + std::to_string(R.total_atoms()) + "\n";
    std::size_t listed = 0;
    json per = json::array();
    for (std::size_t f = 0; f < R.factor_count(); ++f) {
      const auto& K = R.factor(f).field();
      per.push_back({{"factor", f}, {"field", K.to_string()}, {"atoms", R.factor(f).atom_count()}});
      for (std::size_t a = 0; a < R.factor(f).atom_count() && listed < kListed; ++a, ++listed)
        o.report += "  factor " + std::to_string(f) + " atom " + std::to_string(a) + ": " + K.to_string() + "\n";
    }
    if (listed < R.total_atoms()) o.report += "  (" + std::to_string(R.total_atoms() - listed) + " more)\n";
    o.summary = {{"ring", R.to_string()}, {"primes", R.total_atoms()}, {"quotients", per}};
  } else {
    throw InputError("unknown check '" + what + "' (expected cfg, char or quotients)");
  }
  return o;
}

Outcome ring_iso(Context& ctx, const std::string& a, const std::string& b, const std::vector<std::string>& g1,
                 const std::vector<std::string>& g2) {
  const auto R1 = ctx.ring(a), R2 = ctx.ring(b);
  const SubringPresentation p1{R1, g1.empty() ? factor_generators(R1) : ctx.elems(R1, g1)};
  const SubringPresentation p2{R2, g2.empty() ? factor_generators(R2) : ctx.elems(R2, g2)};
  const auto s1 = structure_decompose(p1, ctx.globals().subring_cap).signature;
  const auto s2 = structure_decompose(p2, ctx.globals().subring_cap).signature;
  const bool iso = s1 == s2;
  Outcome o;
  o.report = "first:  " + R1.to_string() + " -> " + s1.to_string() + "\n";
  o.report += "second: " + R2.to_string() + " -> " + s2.to_string() + "\n";
  o.report += std::string("isomorphic: ") + (iso ? "yes" : "no") + "\n";
  o.summary = {{"first", sig_json(s1)}, {"second", sig_json(s2)}, {"isomorphic", iso}};
  o.code = iso ? kExitOk : kExitFails;
  return o;
}

Outcome map_check(Context& ctx, const std::string& arg, const std::string& what) {
  const auto f = ctx.table(ctx.map(arg));
  const auto& R = f.ring();
  Outcome o;
  o.report = "map on " + R.ring().to_string() + " (" + std::to_string(R.size()) + " elements)\n";
  o.summary["ring"] = R.ring().to_string();
  if (what == "contractive") {
    const auto c = is_contractive(f);
    o.report += std::string("contractive: ") + (c.holds ? "yes" : "no") + "\n";
    o.summary["contractive"] = c.holds;
    if (c.witness) {
      const auto& x = R.element(c.witness->first);
      const auto& y = R.element(c.witness->second);
      o.report += "  x = " + x.to_string() + "\n  y = " + y.to_string() + "\n";
      o.report += "  e(x - y) = " + product_e(x - y).to_string() + "\n";
      o.report += "  e(f(x) - f(y)) = " + product_e(f(x) - f(y)).to_string() + "\n";
      o.summary["witness"] = {{"x", x.to_string()}, {"y", y.to_string()}};
    }
    o.code = c.holds ? kExitOk : kExitFails;
  } else if (what == "conv") {
    ConvCheckOptions opts;
    opts.seed = ctx.globals().seed;
    const auto c = commutes_with_conv(f, opts);
    o.report += std::string("commutes with convex combinations: ") + (c.holds ? "yes" : "no") + "\n";
    o.report += "  two-block combinations checked: " + std::to_string(c.two_block_checked) +
                (c.two_block_exhaustive ? " (exhaustive)" : " (sampled)") + "\n";
    o.report += "  all c.f.o.i.: " + (c.full_checked ? std::to_string(c.full_checked_cases) + " cases" : std::string("not run")) + "\n";
    o.summary["commutes"] = c.holds;
    o.summary["two_block"] = {{"checked", c.two_block_checked}, {"exhaustive", c.two_block_exhaustive}};
    o.summary["full"] = {{"run", c.full_checked}, {"cases", c.full_checked_cases}};
    if (c.witness) {
      const auto& [labels, vals] = *c.witness;
      json jv = json::array();
      o.report += "  block of each atom:";
      for (auto l : labels) o.report += " " + std::to_string(l);
      o.report += "\n";
      for (std::size_t i = 0; i < vals.size(); ++i) {
        o.report += "  x" + std::to_string(i + 1) + " = " + R.element(vals[i]).to_string() + "\n";
        jv.push_back(R.element(vals[i]).to_string());
      }
      o.summary["witness"] = {{"labels", labels}, {"values", jv}};
    }
    o.code = c.holds ? kExitOk : kExitFails;
  } else if (what == "polynomial") {
    const auto p = is_polynomial(f);
    o.report += std::string("polynomial: ") + (p.holds ? "yes" : "no") + "\n";
    o.summary["polynomial"] = p.holds;
    if (p.witness) {
      o.report += "  witness " + p.witness->to_string() + "\n";
      o.summary["witness"] = p.witness->to_string();
    } else {
      o.report += "  not contractive, so no polynomial induces it\n";
    }
    if (R.size() <= 16) {
      const bool oracle = polynomial_oracle(f).has_value();
      o.report += std::string("  brute-force oracle agrees: ") + (oracle == p.holds ? "yes" : "no") + "\n";
      o.summary["oracle_agrees"] = oracle == p.holds;
      if (oracle != p.holds) throw std::logic_error("brute-force polynomial search disagrees");
    }
    o.code = p.holds ? kExitOk : kExitFails;
  } else {
    throw InputError("unknown check '" + what + "' (expected contractive, conv or polynomial)");
  }
  return o;
}

Outcome map_topoly(Context& ctx, const std::string& arg) {
  const auto f = ctx.table(ctx.map(arg));
  Outcome o;
  const auto c = is_contractive(f);
  o.summary["ring"] = f.ring().ring().to_string();
  if (!c.holds) {
    o.report = "map is not contractive; no polynomial exists\n";
    o.summary["contractive"] = false;
    o.code = kExitFails;
    return o;
  }
  const auto F = contractive_to_poly(f);
  o.report = "poly on " + F.ring().to_string() + " = " + F.to_string() + "\n";
  o.report += "verified on all " + std::to_string(f.ring().size()) + " elements\n";
  o.summary["contractive"] = true;
  o.summary["poly"] = F.to_string();
  o.summary["degree"] = F.degree();
  o.result = F;
  return o;
}

Outcome map_orbit(Context& ctx, const std::string& arg, const std::vector<std::string>& gen_args,
                  const std::string& method, std::uint64_t cap) {
  if (method != "both" && method != "table" && method != "matrix")
    throw InputError("unknown method '" + method + "' (expected both, table or matrix)");
  const auto m = ctx.map(arg);
  const ProductRing ring = std::holds_alternative<PolyMap>(m) ? std::get<PolyMap>(m).ring()
                                                                : std::get<MapTable>(m).ring().ring();
  Outcome o;
  o.summary["ring"] = ring.to_string();
  std::optional<IterationCertificate> t, x;
  if (method != "matrix") {
    t = iteration_orbit_table(ctx.table(m), cap);
    o.report += t->to_string();
    o.summary["table"] = {{"orbit", t->orbit_size}, {"tail", t->tail}, {"period", t->period}};
  }
  if (method != "table") {
    const auto gens = gen_args.empty() ? covering_scalars(ring) : ctx.elems(ring, gen_args);
    x = std::holds_alternative<PolyMap>(m) ? iteration_orbit_matrix(std::get<PolyMap>(m), gens, cap)
                                           : iteration_orbit_matrix(std::get<MapTable>(m), gens, cap);
    o.report += "generators:\n" + gens_text(gens) + x->to_string();
    o.summary["matrix"] = {{"orbit", x->orbit_size}, {"tail", x->tail}, {"period", x->period},
                           {"boolean_atoms", x->boolean_atoms}, {"generators", gens_json(gens)}};
  }
  if (t && x) {
    const bool agree = t->orbit_size == x->orbit_size && t->tail == x->tail && t->period == x->period;
    o.report += std::string("methods agree: ") + (agree ? "yes" : "no") + "\n";
    o.summary["agree"] = agree;
    if (!agree) o.code = kExitFails;
  }
  return o;
}

Outcome map_tabulate(Context& ctx, const std::string& arg) {
  const auto f = ctx.table(ctx.map(arg));
  Outcome o;
  o.report = f.to_text();
  o.summary = {{"ring", f.ring().ring().to_string()}, {"size", f.ring().size()}};
  o.result = f;
  return o;
}

Outcome demo_vraciu(const std::vector<std::string>& fields) {
  if (fields.empty()) throw InputError("--fields needs at least one field");
  FieldAssignment fa;
  for (const auto& s : fields) fa.assign.push_back(ProductRing::parse(s).factor(0).field());
  const auto r = vraciu_build(fa);
  Outcome o;
  o.report = r.to_string();
  o.summary = {{"ring", r.ring.to_string()},
               {"signature", sig_json(r.signature)},
               {"idempotent_atoms", r.idempotent_atoms},
               {"quotient_sizes", r.quotient_sizes},
               {"ok", r.ok}};
  o.code = r.ok ? kExitOk : kExitFails;
  return o;
}

Outcome demo_tower(const Globals& g, std::uint64_t q, std::size_t N) {
  std::vector<TowerReport> reports;
  json jr = json::array();
  Outcome o;
  bool ok = true;
  for (std::size_t n = 1; n <= N; ++n) {
    TowerOptions opts;
    opts.seed = g.seed;
    reports.push_back(tower_verify(TowerRing::build(q, n), opts));
    const auto& r = reports.back();
    ok = ok && r.ok();
    o.report += r.to_string();
    jr.push_back({{"N", n},
                  {"quotient_sizes", r.quotient_sizes},
                  {"max_quotient", r.max_quotient},
                  {"membership_agrees", r.membership_agrees},
                  {"membership_exhaustive", r.membership_exhaustive},
                  {"membership_checked", r.membership_checked},
                  {"closure", r.closure},
                  {"closure_exhaustive", r.closure_exhaustive},
                  {"embeddings_coherent", r.embeddings_coherent},
                  {"ok", r.ok()}});
  }
  const bool grows = tower_growth(reports);
  o.report += std::string("max quotient strictly increasing in N: ") + (grows ? "yes" : "no") + "\n";
  o.summary = {{"q", q}, {"instances", jr}, {"growth", grows}};
  o.code = ok && grows ? kExitOk : kExitFails;
  return o;
}

Outcome demo_gf4_kernel() {
  const auto r = gf4_kernel_check();
  Outcome o;
  o.report = r.to_string();
  o.summary = {{"relation", r.relation_holds}, {"h", r.h},           {"h_as_stated", r.h_as_stated},
               {"candidates", r.candidates},    {"rejected", r.rejected}, {"ok", r.ok()}};
  o.code = r.ok() ? kExitOk : kExitFails;
  return o;
}

Outcome demo_gf4_sequence(std::size_t N, std::size_t k) {
  const auto r = gf4_sequence_demo(N, k);
  Outcome o;
  o.report = r.to_string();
  o.summary = {{"N", N},
               {"k", k},
               {"ring", r.ring},
               {"quotient_sizes", r.quotient_sizes},
               {"quotients_bounded", r.quotients_bounded},
               {"relation", r.relation_holds},
               {"maps_into", r.maps_into},
               {"contractive", r.contractive},
               {"h_on_g", r.h_on_g},
               {"experiment_truncation_polynomial", r.truncation_witness.has_value()},
               {"ok", r.ok()}};
  if (r.truncation_witness) o.summary["experiment_witness"] = r.truncation_witness->to_string();
  o.code = r.ok() ? kExitOk : kExitFails;
  return o;
}

Outcome selftest(const Globals& g, std::uint64_t cap) {
  SelftestOptions opts;
  opts.exhaustive_cap = cap;
  opts.seed = g.seed;
  Outcome o;
  json suites = json::array();
  bool ok = true;
  for (const auto& s : run_selftest(opts)) {
    o.report += (s.passed ? "PASS " : "FAIL ") + s.name + " (" + std::to_string(s.cases) + " cases)\n";
    if (!s.passed) o.report += "  " + s.detail + "\n";
    suites.push_back({{"name", s.name}, {"passed", s.passed}, {"cases", s.cases}});
    ok = ok && s.passed;
  }
  o.summary = {{"suites", suites}, {"passed", ok}};
  o.code = ok ? kExitOk : kExitFails;
  return o;
}

void emit(std::ostream& out, const std::string& command, const Outcome& o) {
  out << o.report;
  out << "---SUMMARY---\n";
  json s = o.summary;
  s["command"] = command;
  s["exit_code"] = o.code;
  out << s.dump(2) << "\n";
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with CFG-rings, K^[B] step-function rings and their maps", "cfgring"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for every sampled check")->capture_default_str();
  app.add_option("--table-cap", g.table_cap, "largest ring enumerated for map tables and exhaustive checks")
      ->capture_default_str();
  app.add_option("--atom-cap", g.atom_cap, "largest total atom count accepted")->capture_default_str();
  app.add_option("--subring-cap", g.subring_cap, "largest generated subring")->capture_default_str();
  app.add_option("--workspace", g.workspace, "workspace file for @name references");
  app.add_option("--as", g.as, "store the result in the workspace under this name");

  std::string command;
  std::function<Outcome(Context&)> action;
  auto on = [&](CLI::App* sub, std::string name, std::function<Outcome(Context&)> f) {
    sub->callback([&, name, f] {
      command = name;
      action = f;
    });
  };

  std::string s1, s2, what, method = "both";
  std::vector<std::string> gens, gens2, fields;
  std::uint64_t orbit_cap = kDefaultOrbitCap, q = 2, exhaustive_cap = 4096;
  std::size_t N = 3, k = 1;

  auto* ring = app.add_subcommand("ring", "rings: construct, decompose, check, compare");
  ring->require_subcommand(1);
  auto* rnew = ring->add_subcommand("new", "parse and describe a ring");
  rnew->add_option("ring", s1, "ring text, e.g. GF(2)^[B(atoms=3)] x GF(4)")->required();
  on(rnew, "ring new", [&](Context& c) { return ring_new(c, s1); });

  auto* rdec = ring->add_subcommand("decompose", "structure theorem signature of the presented ring");
  rdec->add_option("ring", s1)->required();
  rdec->add_option("--gens", gens, "generators (default: the generator of each non-prime factor)");
  on(rdec, "ring decompose", [&](Context& c) { return ring_decompose(c, s1, gens); });

  auto* rchk = ring->add_subcommand("check", "cfg | char | quotients");
  rchk->add_option("ring", s1)->required();
  rchk->add_option("what", what)->required()->check(CLI::IsMember({"cfg", "char", "quotients"}));
  rchk->add_option("--gens", gens, "generators for cfg (default: the field scalars)");
  on(rchk, "ring check", [&](Context& c) { return ring_check(c, s1, what, gens); });

  auto* riso = ring->add_subcommand("iso", "isomorphism of two presented rings");
  riso->add_option("first", s1)->required();
  riso->add_option("second", s2)->required();
  riso->add_option("--gens1", gens);
  riso->add_option("--gens2", gens2);
  on(riso, "ring iso", [&](Context& c) { return ring_iso(c, s1, s2, gens, gens2); });

  auto* map = app.add_subcommand("map", "maps given as tables or polynomials");
  map->require_subcommand(1);
  auto* mchk = map->add_subcommand("check", "contractive | conv | polynomial");
  mchk->add_option("map", s1, "@name, a file, or map text")->required();
  mchk->add_option("what", what)->required()->check(CLI::IsMember({"contractive", "conv", "polynomial"}));
  on(mchk, "map check", [&](Context& c) { return map_check(c, s1, what); });

  auto* mpoly = map->add_subcommand("topoly", "polynomial inducing a contractive map");
  mpoly->add_option("map", s1)->required();
  on(mpoly, "map topoly", [&](Context& c) { return map_topoly(c, s1); });

  auto* morb = map->add_subcommand("orbit", "size of {f^k : k >= 1}");
  morb->add_option("map", s1)->required();
  morb->add_option("--gens", gens, "generators for the matrix method (default: the field scalars)");
  morb->add_option("--method", method, "both | table | matrix")->capture_default_str();
  morb->add_option("--orbit-cap", orbit_cap)->capture_default_str();
  on(morb, "map orbit", [&](Context& c) { return map_orbit(c, s1, gens, method, orbit_cap); });

  auto* mtab = map->add_subcommand("tabulate", "print a map as a table");
  mtab->add_option("map", s1)->required();
  on(mtab, "map tabulate", [&](Context& c) { return map_tabulate(c, s1); });

  auto* demo = app.add_subcommand("demo", "builders for the standard examples");
  demo->require_subcommand(1);
  auto* dv = demo->add_subcommand("vraciu", "ring with prescribed quotient fields");
  dv->add_option("--fields", fields, "one field per atom, e.g. GF(2),GF(2),GF(4)")->delimiter(',')->required();
  on(dv, "demo vraciu", [&](Context&) { return demo_vraciu(fields); });
  auto* dt = demo->add_subcommand("tower", "tower rings for N = 1 .. N");
  dt->add_option("--q", q)->capture_default_str();
  dt->add_option("--N", N)->capture_default_str();
  on(dt, "demo tower", [&](Context& c) { return demo_tower(c.globals(), q, N); });
  auto* dk = demo->add_subcommand("gf4-kernel", "the GF(4) obstruction");
  on(dk, "demo gf4-kernel", [&](Context&) { return demo_gf4_kernel(); });
  auto* ds = demo->add_subcommand("gf4-sequence", "finite truncations of the GF(4) sequence ring");
  ds->add_option("--N", N)->capture_default_str();
  ds->add_option("--k", k)->capture_default_str();
  on(ds, "demo gf4-sequence", [&](Context&) { return demo_gf4_sequence(N, k); });

  auto* st = app.add_subcommand("selftest", "run the invariant suites");
  st->add_option("--exhaustive-cap", exhaustive_cap)->capture_default_str();
  on(st, "selftest", [&](Context& c) { return selftest(c.globals(), exhaustive_cap); });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    err << "error: " << message << "\n";
    out << "---SUMMARY---\n" << json{{"command", command}, {"exit_code", code}, {"error", kind}, {"message", message}}.dump(2) << "\n";
    return code;
  };
  try {
    if (!g.as.empty() && g.workspace.empty()) throw InputError("--as needs --workspace");
    Context ctx(g);
    Outcome o = action(ctx);
    if (!g.as.empty()) {
      if (!o.result) throw InputError("'" + command + "' has no result to store");
      ctx.workspace().bind(g.as, *o.result);
      ctx.workspace().save(g.workspace);
      o.report += "stored as @" + g.as + " in " + g.workspace + "\n";
    }
    emit(out, command, o);
    return o.code;
  } catch (const ParseError& e) {
    return fail(kExitInput, "parse", e.annotated());
  } catch (const InputError& e) {
    return fail(kExitInput, "input", e.what());
  } catch (const CapExceeded& e) {
    return fail(kExitCap, "cap", e.what());
  } catch (const std::logic_error& e) {
    return fail(kExitFails, "internal", std::string("internal verification failed: ") + e.what());
  }
}

}  // namespace cfgring
