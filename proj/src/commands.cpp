#include "dgl/commands.hpp"

#include "dgl/catalog.hpp"
#include "dgl/enveloping.hpp"
#include "dgl/quillen.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>

namespace dgl {

using json = nlohmann::ordered_json;

namespace {

struct Ctx {
  const ObjectFile& f;
  const json& op;
  const RunOptions& o;
  Record& rec;

  std::string str(const std::string& key, const std::string& def = "") const {
    if (!op.contains(key)) return def;
    if (!op[key].is_string()) throw ValidationError("operation field '" + key + "' must be a string");
    return op[key].get<std::string>();
  }
  bool has(const std::string& key) const { return op.contains(key); }

  int integer(const std::string& key, const std::optional<int>& flag, int def) const {
    int v = def;
    if (flag) {
      v = *flag;
    } else if (op.contains(key)) {
      const auto& j = op[key];
      if (j.is_number_integer()) v = j.get<int>();
      else if (j.is_string()) v = std::stoi(j.get<std::string>());
      else throw ValidationError("operation field '" + key + "' must be an integer");
    }
    rec.caps[key] = v;
    return v;
  }
  int plain(const std::string& key, int def) const { return integer(key, std::nullopt, def); }
  int cap(int def = 2) const { return integer("cap", o.cap, def); }
  int weight(int def = 3) const { return integer("weight", o.weight, def); }
  int sym(int def = 3) const { return integer("sym", o.sym, def); }
  int levels(int def = 2) const { return integer("levels", o.levels, def); }
  int depth(int def = 64) const { return integer("depth", o.depth, def); }

  const DgLieAlgebra& lie(const std::string& key = "lie", const std::string& def = "") const {
    std::string name = str(key, def);
    if (name.empty()) throw ValidationError("operation needs '" + key + "'");
    const auto& v = f.get(name);
    if (const auto* g = std::get_if<DgLieAlgebra>(&v)) return *g;
    if (const auto* p = std::get_if<FreeLieTruncated>(&v)) return p->lie;
    throw ValidationError("'" + name + "' is a " + kind_name(v) + ", not a Lie algebra");
  }
  template <class T>
  const T& get(const std::string& key, const std::string& def = "") const {
    std::string name = str(key, def);
    if (name.empty()) throw ValidationError("operation needs '" + key + "'");
    return f.as<T>(name);
  }
};

void dims_table(Record& r, const std::string& name, const std::map<int, int>& dims) {
  auto& t = r.table(name, {"degree", "dim"});
  for (const auto& [d, n] : dims) t.rows.push_back({std::to_string(d), std::to_string(n)});
}

std::map<int, int> space_dims(const GradedSpace& s) {
  std::map<int, int> out;
  for (int d : s.degrees()) out[d] = s.dim(d);
  return out;
}

json vec_json(const GradedSpace& s, const Vec& v) {
  json j = json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) j[s.label_of(static_cast<int>(i))] = to_string(v[i]);
  return j;
}

void point_count(Record& r, const std::string& what, const PointCount& c) {
  auto& t = r.table(what, {"exact", "finite", "count", "dimension", "lower", "upper"});
  t.rows.push_back({c.exact ? "yes" : "no", c.finite ? "yes" : "no", std::to_string(c.count), std::to_string(c.dimension),
                    std::to_string(c.lower), std::to_string(c.upper)});
  if (!c.note.empty()) r.notes.push_back(what + ": " + c.note);
  if (!c.exact && r.status == Status::Ok) r.status = Status::Unknown;
}

const CochainComplex& complex_of(const ObjectValue& v) {
  if (const auto* g = std::get_if<DgLieAlgebra>(&v)) return g->complex();
  if (const auto* p = std::get_if<FreeLieTruncated>(&v)) return p->lie.complex();
  if (const auto* a = std::get_if<ArtinianDgAlgebra>(&v)) return a->algebra().complex();
  if (const auto* c = std::get_if<Cdga>(&v)) return c->complex();
  if (const auto* fc = std::get_if<FilteredComplex>(&v)) return fc->total();
  throw ValidationError("a " + kind_name(v) + " has no underlying complex");
}

std::vector<SparseMatrix> action_matrices(const ObjectFile& f, const ActionSpec& a) {
  const auto& v = f.get(a.lie);
  const DgLieAlgebra* g = std::get_if<DgLieAlgebra>(&v);
  if (!g) throw ValidationError("action: '" + a.lie + "' is not a Lie algebra");
  const auto& h = f.as<DgLieAlgebra>(a.on);
  std::vector<SparseMatrix> out(g->dim(), SparseMatrix(h.dim(), h.dim()));
  for (const auto& [x, images] : a.images) {
    int i = g->index(x);
    for (const auto& [u, img] : images) {
      int col = h.index(u);
      for (const auto& [w, c] : img) out[i].add_to(h.index(w), col, c);
    }
  }
  return out;
}

ArtinianDgAlgebra artinian_as(const ObjectFile& f, const std::string& name) {
  const auto& v = f.get(name);
  if (const auto* a = std::get_if<ArtinianDgAlgebra>(&v)) return *a;
  if (const auto* c = std::get_if<Cdga>(&v)) return ArtinianDgAlgebra(*c);
  throw ValidationError("'" + name + "' is a " + kind_name(v) + ", not an artinian algebra");
}

// ---- commands ----

void cmd_verify(Ctx& c) {
  std::string name = c.str("object");
  if (name.empty()) throw ValidationError("verify needs 'object'");
  const auto& v = c.f.get(name);
  c.rec.notes.push_back("kind: " + kind_name(v));
  if (const auto* g = std::get_if<DgLieAlgebra>(&v)) {
    auto cert = verify_dgla(*g);
    c.rec.certify("dg Lie axioms", cert.ok, cert.ok ? json::object() : json{{"violation", cert.violation}});
    dims_table(c.rec, "basis", space_dims(g->space()));
  } else if (const auto* p = std::get_if<FreeLieTruncated>(&v)) {
    auto cert = verify_dgla(p->lie);
    c.rec.certify("dg Lie axioms below the weight bound", cert.ok, cert.ok ? json::object() : json{{"violation", cert.violation}});
    auto& t = c.rec.table("weights", {"weight", "dim"});
    auto wd = p->weight_dims();
    for (std::size_t w = 0; w < wd.size(); ++w) t.rows.push_back({std::to_string(w + 1), std::to_string(wd[w])});
  } else if (const auto* a = std::get_if<ArtinianDgAlgebra>(&v)) {
    c.rec.certify("artinian", true, {{"order", a->order()}, {"dim", a->dim()}});
    dims_table(c.rec, "basis", space_dims(a->algebra().space()));
  } else if (const auto* cd = std::get_if<Cdga>(&v)) {
    c.rec.certify("cdga axioms", true, {{"dim", cd->dim()}});
    dims_table(c.rec, "basis", space_dims(cd->space()));
  } else if (const auto* fc = std::get_if<FilteredComplex>(&v)) {
    c.rec.certify("d preserves the filtration", true, {{"floor", fc->floor()}, {"ceiling", fc->ceiling()}});
    auto& t = c.rec.table("levels", {"level", "degree", "dim"});
    for (int i = fc->floor(); i <= fc->ceiling(); ++i)
      for (int d : fc->total().space().degrees()) t.rows.push_back({std::to_string(i), std::to_string(d), std::to_string(fc->level_dim(i, d))});
    auto adm = is_admissible_lie(*fc);
    c.rec.notes.push_back(adm.admissible ? "admissible as a Lie filtration" : "not admissible as a Lie filtration: " + adm.certificate);
  } else if (const auto* sc = std::get_if<SimplicialCategory>(&v)) {
    auto viol = simplicial_category_violation(*sc);
    c.rec.certify("simplicial category axioms", !viol, viol ? json{{"violation", *viol}} : json::object());
  } else if (const auto* a = std::get_if<ActionSpec>(&v)) {
    auto sd = semidirect(c.f.as<DgLieAlgebra>(a->lie), c.f.as<DgLieAlgebra>(a->on), action_matrices(c.f, *a));
    auto cert = verify_dgla(sd);
    c.rec.certify("semidirect product axioms", cert.ok, cert.ok ? json::object() : json{{"violation", cert.violation}});
  } else if (const auto* ps = std::get_if<PolynomialSystem>(&v)) {
    auto& t = c.rec.table("generators", {"index", "polynomial"});
    for (std::size_t i = 0; i < ps->generators.size(); ++i) t.rows.push_back({std::to_string(i), to_string(ps->generators[i], ps->variables)});
    c.rec.certify("parsed", true);
  } else if (const auto* s = std::get_if<SampleSet>(&v)) {
    auto host = sample_host(c.f, *s);
    auto pts = sample_vectors(host, *s);
    int bad = 0;
    for (const auto& x : pts) bad += !mc_check(host, x).ok;
    c.rec.certify("every sample is Maurer-Cartan", bad == 0, {{"samples", pts.size()}, {"failing", bad}});
  }
}

void cmd_cohomology(Ctx& c) {
  std::string name = c.str("object", c.str("lie"));
  if (name.empty()) throw ValidationError("cohomology needs 'object'");
  const auto& cx = complex_of(c.f.get(name));
  dims_table(c.rec, "cochains", space_dims(cx.space()));
  std::map<int, int> h;
  for (int d : cx.space().degrees()) h[d] = cohomology_at(cx, d).dim;
  dims_table(c.rec, "cohomology", h);
}

void cmd_chevalley(Ctx& c) {
  const auto& g = c.lie();
  int n = c.sym();
  auto ch = chevalley_C(g, n);
  std::map<std::pair<int, int>, int> dims;
  for (int i = 0; i < ch.dim(); ++i) ++dims[{ch.sym_degree(i), ch.coalgebra.degree(i)}];
  auto& t = c.rec.table("C(g) by symmetric degree", {"sym", "degree", "dim"});
  for (const auto& [k, d] : dims) t.rows.push_back({std::to_string(k.first), std::to_string(k.second), std::to_string(d)});
  auto cert = verify_coalgebra(ch.coalgebra);
  c.rec.certify("coalgebra axioms", cert.ok, cert.ok ? json::object() : json{{"violation", cert.violation}});
  if (auto w = chevalley_valid_window(g, n)) {
    c.rec.caps["window"] = {w->lo, w->hi};
    dims_table(c.rec, "reduced C(g) cohomology", homology_C_bar(g, n, *w));
  } else {
    c.rec.notes.push_back("no degree window is exact at symmetric bound " + std::to_string(n));
    c.rec.status = Status::Unknown;
  }
}

void cmd_cobar(Ctx& c) {
  auto a = artinian_as(c.f, c.str("artinian", c.str("object")));
  int w = c.weight();
  auto x = dual_artinian(a);
  auto l = cobar_L(x, w);
  auto& t = c.rec.table("L(X) by weight", {"weight", "dim"});
  auto wd = l.free.weight_dims();
  for (std::size_t i = 0; i < wd.size(); ++i) t.rows.push_back({std::to_string(i + 1), std::to_string(wd[i])});
  dims_table(c.rec, "L(X) by degree", space_dims(l.lie().space()));
  dims_table(c.rec, "H(L(X)) below the weight bound", cohomology_dims(l.lie().complex()));
  auto cert = verify_dgla(l.lie());
  c.rec.certify("dg Lie axioms", cert.ok, cert.ok ? json::object() : json{{"violation", cert.violation}});
}

void cmd_adjunction(Ctx& c) {
  const auto& g = c.lie();
  auto a = artinian_as(c.f, c.str("artinian", "kx2"));
  int samples = c.plain("samples", 5);
  std::mt19937 rng(static_cast<std::mt19937::result_type>(c.o.seed));
  auto x = dual_artinian(a);
  auto conv = convolution_lie(x, g);
  auto mg = tensor_cdga_lie(a.maximal_ideal(), g);
  int len = filtration_length(x);
  auto ch = chevalley_C(g, len);
  auto l = cobar_L(x, std::max(len, 1));
  auto iso = artinian_hom_iso(a, mg, conv);
  int ok = 0, twisting = 0;
  json logs = json::array();
  for (int s = 0; s < samples; ++s) {
    Vec mc = sample_mc(mg, rng);
    SparseMatrix tau = conv.matrix(iso.apply(mc));
    if (!is_twisting(conv, tau)) continue;
    ++twisting;
    auto maps = adjunction_transport(x, ch, l, tau);
    bool good = verify_coalgebra_map(x, ch.coalgebra, maps.coalgebra_map).ok &&
                verify_truncated_lie_map(l.free, g, maps.lie_map).ok &&
                twisting_from_coalgebra_map(x, ch, maps.coalgebra_map) == tau && twisting_from_lie_map(l, g, maps.lie_map) == tau &&
                coalgebra_map_from_twisting(x, ch, tau) == maps.coalgebra_map && lie_map_from_twisting(l, g, tau) == maps.lie_map;
    ok += good;
    logs.push_back(vec_json(mg.space(), mc));
  }
  c.rec.inputs["seed"] = c.o.seed;
  auto& t = c.rec.table("round trips", {"samples", "twisting", "exact"});
  t.rows.push_back({std::to_string(samples), std::to_string(twisting), std::to_string(ok)});
  c.rec.certify("MC residual vanishes", twisting == samples, {{"samples", samples}});
  c.rec.certify("both adjunction round trips are identities", ok == twisting, {{"elements", logs}});
}

void cmd_nerve(Ctx& c) {
  const auto& g = c.lie();
  auto a = artinian_as(c.f, c.str("artinian", "kx2"));
  int levels = c.levels(), cap = c.cap(), samples = c.plain("samples", 3);
  std::mt19937 rng(static_cast<std::mt19937::result_type>(c.o.seed));
  auto& t = c.rec.table("parameter dimensions", {"level", "i", "dim k_i"});
  for (int n = 0; n <= levels; ++n) {
    auto s = nerve(g, a, n, cap);
    for (int i = 0; i < samples; ++i) s.simplices.push_back(sample_simplex(s.host, n, cap, rng));
    auto pd = s.parameter_dims();
    for (std::size_t i = 0; i < pd.size(); ++i) t.rows.push_back({std::to_string(n), std::to_string(i + 1), std::to_string(pd[i])});
    auto cert = s.verify();
    c.rec.certify("level " + std::to_string(n) + " simplices", cert.ok,
                  cert.ok ? json{{"materialized", s.simplices.size()}} : json{{"violation", cert.violation}});
  }
}

void cmd_pi0(Ctx& c) {
  int depth = c.depth();
  if (c.has("sample")) {
    const auto& s = c.get<SampleSet>("sample");
    auto host = sample_host(c.f, s);
    auto pts = sample_vectors(host, s);
    auto r = nerve_pi0(host, pts, depth);
    auto& t = c.rec.table("components of the sample", {"lower", "upper"});
    t.rows.push_back({std::to_string(r.lower), std::to_string(r.upper)});
    json w = json::array();
    for (const auto& [k, d] : r.groupoid.hom)
      if (k.first < k.second && d.kind == GaugeDecision::Kind::Witness)
        w.push_back({{"from", k.first}, {"to", k.second}, {"log", vec_json(host.space(), d.witness.log)}});
    c.rec.certify("gauge witnesses", true, {{"witnesses", w}});
    if (!r.exact()) c.rec.status = Status::Unknown;
    return;
  }
  const auto& g = c.lie();
  if (c.has("artinian")) point_count(c.rec, "pi0", classical_part(g, artinian_as(c.f, c.str("artinian")), depth));
  else point_count(c.rec, "pi0", classical_part_direct(g, depth));
}

void cmd_dual_numbers(Ctx& c) {
  const auto& g = c.lie();
  int levels = c.levels(), cap = c.cap();
  std::vector<int> ns;
  if (c.has("n")) ns.push_back(c.plain("n", 0));
  else ns = {0, 1, 2};
  auto& t = c.rec.table("homotopy", {"n", "i", "nerve", "dim H^(1+n-i)"});
  for (int n : ns) {
    auto r = dual_numbers_homotopy(g, n, levels, cap);
    for (std::size_t i = 0; i < r.nerve_pi.size(); ++i)
      t.rows.push_back({std::to_string(n), std::to_string(i), std::to_string(r.nerve_pi[i]), std::to_string(r.oracle_pi[i])});
    c.rec.certify("n = " + std::to_string(n) + ": nerve agrees with cohomology", r.agree());
  }
}

void cmd_hull(Ctx& c) {
  const auto& g = c.lie();
  int order = c.integer("order", c.o.weight, 2);
  auto p = hull_presentation(one_truncation(g), order);
  auto& t = c.rec.table("relations", {"index", "relation"});
  for (std::size_t i = 0; i < p.relations.size(); ++i) t.rows.push_back({std::to_string(i), to_string(p.relations[i], p.generators)});
  std::string gens;
  for (const auto& g : p.generators) gens += (gens.empty() ? "" : ", ") + g;
  c.rec.notes.push_back("generators: " + gens);
  point_count(c.rec, "points over k", hull_points_over_k(p));
  if (c.has("artinian")) point_count(c.rec, "points over " + c.str("artinian"), hull_points(p, artinian_as(c.f, c.str("artinian"))));
}

void cmd_truncation(Ctx& c) {
  const auto& g = c.lie();
  auto t = one_truncation(g);
  auto& tab = c.rec.table("dimensions", {"degree", "g", "h", "H(g)", "H(h)"});
  auto hg = cohomology_dims(g.complex()), hh = cohomology_dims(t.h.complex());
  std::set<int> degs;
  for (int d : g.space().degrees()) degs.insert(d);
  for (int d : degs)
    tab.rows.push_back({std::to_string(d), std::to_string(g.space().dim(d)), std::to_string(t.h.space().dim(d)),
                        std::to_string(hg.count(d) ? hg[d] : 0), std::to_string(hh.count(d) ? hh[d] : 0)});
  c.rec.notes.push_back("rank of d on degree 0: " + std::to_string(t.rank_d0));
  auto cert = verify_lie_map(t.h, g, t.inclusion);
  c.rec.certify("inclusion is a dg Lie map", cert.ok, cert.ok ? json::object() : json{{"violation", cert.violation}});
  bool higher = true;
  for (int d : degs)
    if (d >= 2 && (hg.count(d) ? hg[d] : 0) != (hh.count(d) ? hh[d] : 0)) higher = false;
  c.rec.certify("H^1 injects and H^>=2 is unchanged",
                higher && (hh.count(1) ? hh[1] : 0) <= (hg.count(1) ? hg[1] : 0));
}

void cmd_rees(Ctx& c) {
  const auto& fc = c.get<FilteredComplex>("filtered", c.str("object"));
  auto m = rees(fc);
  auto& t = c.rec.table("Rees module", {"weight", "degree", "dim"});
  for (int w = m.floor; w <= m.ceiling(); ++w)
    for (int d : fc.total().space().degrees()) t.rows.push_back({std::to_string(w), std::to_string(d), std::to_string(m.dim(w, d))});
  c.rec.caps["ceiling"] = m.ceiling();
  c.rec.certify("torsion-free", m.torsion_free());
  c.rec.certify("phi(rees(V)) = V", phi(m) == fc);
}

void cmd_pbw(Ctx& c) {
  const auto& g = c.lie();
  int w = c.weight(4);
  auto s = symmetrization_map(g, w);
  c.rec.certify("symmetrization bijective on each length piece", s.filtered_bijective);
  if (!nilpotency_index(g)) {
    c.rec.notes.push_back("not nilpotent: gr U comparison skipped");
    return;
  }
  auto lb = lcs_rebase(g);
  auto gr = associated_graded_lie(lb.lie, lb.weight);
  auto lhs = filtered_word_spans(lb.lie, lb.weight, w, w);
  auto rhs = filtered_word_spans(gr, lb.weight, w, w);
  auto& t = c.rec.table("filtered spans", {"weight", "length", "U(g)", "U(gr g)"});
  for (int p = 0; p <= w; ++p)
    for (int l = 0; l <= w; ++l) t.rows.push_back({std::to_string(p), std::to_string(l), std::to_string(lhs[p][l]), std::to_string(rhs[p][l])});
  c.rec.certify("gr U(g) = U(gr g)", lhs == rhs);
}

void cmd_tor(Ctx& c) {
  const auto& a = c.get<PolynomialSystem>("left", "u2");
  const auto& b = c.get<PolynomialSystem>("right", "u2");
  if (a.variables != b.variables) throw ValidationError("tor: both sides need the same variables");
  int bound = c.plain("bound", 3);
  auto r = tor_intersection(static_cast<int>(a.variables.size()), a.generators, b.generators, bound);
  auto s = tor_intersection(static_cast<int>(a.variables.size()), b.generators, a.generators, bound);
  auto& t = c.rec.table("Tor", {"i", "dim"});
  for (std::size_t i = 0; i < r.dims.size(); ++i) t.rows.push_back({std::to_string(i), std::to_string(r.dims[i])});
  auto& q = c.rec.table("quotients", {"side", "dim"});
  q.rows.push_back({"C/I", std::to_string(r.quotient_dims[0])});
  q.rows.push_back({"C/J", std::to_string(r.quotient_dims[1])});
  c.rec.certify("symmetric in the two sides", r.dims == s.dims);
}

void cmd_quotient(Ctx& c) {
  const auto& a = c.get<ActionSpec>("action");
  const auto& g = c.f.as<DgLieAlgebra>(a.lie);
  const auto& h = c.f.as<DgLieAlgebra>(a.on);
  auto art = artinian_as(c.f, c.str("artinian", "kx3"));
  const auto& s = c.get<SampleSet>("sample");
  if (s.lie != a.on) throw ValidationError("quotient-compare: the sample must live in '" + a.on + "'");
  auto r = quotient_nerve_compare(g, h, action_matrices(c.f, a), art, sample_vectors(nerve_host(h, art), s), c.depth());
  auto& t = c.rec.table("classes", {"semidirect", "fibre", "orbits"});
  t.rows.push_back({std::to_string(r.semidirect.components_upper), std::to_string(r.fibre.components_upper),
                    std::to_string(r.orbit_classes)});
  for (const auto& n : r.notes) c.rec.notes.push_back(n);
  if (!r.resolved) {
    c.rec.status = Status::Unknown;
    return;
  }
  c.rec.certify("pi0 of the semidirect nerve = orbits on pi0 of the fibre", r.agree);
}

void cmd_torsor(Ctx& c) {
  const auto& b = c.get<Cdga>("cdga");
  const auto& g = c.lie();
  auto a = artinian_as(c.f, c.str("artinian", "kx2"));
  auto r = trivial_torsor_nerve(b, g, a, c.levels(), c.cap());
  auto& t = c.rec.table("parameter dimensions", {"level", "i", "dim k_i"});
  for (std::size_t n = 0; n < r.level_dims.size(); ++n)
    for (std::size_t i = 0; i < r.level_dims[n].size(); ++i)
      t.rows.push_back({std::to_string(n), std::to_string(i + 1), std::to_string(r.level_dims[n][i])});
  point_count(c.rec, "pi0", r.pi0);
}

void homotopy_table(Record& rec, const TruncatedSimplicialSet& s) {
  auto& t = rec.table("levels", {"level", "simplices"});
  for (int n = 0; n <= s.levels(); ++n) t.rows.push_back({std::to_string(n), std::to_string(s.size(n))});
  auto v = simplicial_identity_violation(s);
  rec.certify("simplicial identities", !v, v ? json{{"violation", *v}} : json::object());
  auto h = pi0_pi1(s);
  std::optional<int> order;
  if (h.pi1) order = group_order(*h.pi1);
  auto& p = rec.table("homotopy", {"pi0", "pi1 generators", "pi1 relators", "pi1 order"});
  p.rows.push_back({std::to_string(h.components), h.pi1 ? std::to_string(h.pi1->generators) : "-",
                    h.pi1 ? std::to_string(h.pi1->relators.size()) : "-", order ? std::to_string(*order) : "unknown"});
  if (!h.caveat.empty()) rec.notes.push_back(h.caveat);
  if (!order && rec.status == Status::Ok) rec.status = Status::Unknown;
}

void cmd_tn(Ctx& c) {
  const auto& sc = c.get<SimplicialCategory>("category");
  int levels = c.levels(std::min(3, sc.levels()));
  homotopy_table(c.rec, tn_nerve(sc, levels));
}

void cmd_wbar(Ctx& c) {
  const auto& sc = c.get<SimplicialCategory>("category");
  int levels = c.levels(std::min(3, sc.levels()));
  auto tn = tn_nerve(sc, levels);
  auto wb = wbar_nerve(sc, levels);
  homotopy_table(c.rec, wb);
  auto pi = pi_map(sc, tn, wb);
  auto rho = rho_map(sc, tn, wb);
  auto pv = simplicial_map_violation(tn, wb, pi);
  c.rec.certify("pi: TN -> W-bar is simplicial", !pv, pv ? json{{"violation", *pv}} : json::object());
  c.rec.certify("pi o rho = id", is_identity(compose_maps(pi, rho)));
  auto rv = simplicial_map_violation(wb, tn, rho);
  c.rec.notes.push_back(rv ? "rho is a levelwise section but not simplicial: " + *rv : "rho is simplicial");
  auto cmp = compare_low_homotopy(tn, wb, pi);
  auto& t = c.rec.table("pi on low homotopy", {"pi0 bijective", "pi1 iso", "|pi1 TN|", "|pi1 W-bar|"});
  t.rows.push_back({cmp.pi0_bijective ? "yes" : "no", cmp.pi1_iso ? (*cmp.pi1_iso ? "yes" : "no") : "unknown",
                    std::to_string(cmp.source_order), std::to_string(cmp.target_order)});
}

void cmd_kan(Ctx& c) {
  if (c.has("category")) {
    const auto& sc = c.get<SimplicialCategory>("category");
    int levels = c.levels(std::min(3, sc.levels()));
    auto which = c.str("nerve", "tn");
    auto s = which == "wbar" ? wbar_nerve(sc, levels) : tn_nerve(sc, levels);
    auto r = horn_search(s, std::min(2, levels - 1));
    c.rec.caps["horn dimension"] = std::min(2, levels - 1);
    c.rec.certify("every horn has a filler", r.kan, {{"horns", r.horns}, {"failure", r.failure}});
    return;
  }
  const auto& g = c.lie();
  auto a = artinian_as(c.f, c.str("artinian", "kx2"));
  int cap = c.cap(), samples = c.plain("samples", 3), max_cap = c.plain("fill cap", 10);
  std::mt19937 rng(static_cast<std::mt19937::result_type>(c.o.seed));
  FormHost h(nerve_host(g, a));
  auto& t = c.rec.table("horns", {"level", "horns", "filled"});
  for (int n = 1; n <= 2; ++n) {
    std::vector<FormVec> zs;
    for (int i = 0; i < samples; ++i) zs.push_back(sample_simplex(h, n, cap, rng));
    auto r = kan_check(h, n, zs, max_cap);
    t.rows.push_back({std::to_string(n), std::to_string(r.horns), std::to_string(r.filled)});
    if (!r.ok) {
      c.rec.notes.push_back("level " + std::to_string(n) + ": " + r.failure);
      if (c.rec.status == Status::Ok) c.rec.status = Status::Unknown;
    }
  }
  if (c.rec.status == Status::Ok) c.rec.certify("every sampled horn fills within the cap", true);
}

void cmd_counterexample(Ctx& c) {
  int w = c.weight();
  auto ex = sl2_example(w);
  auto ab = abelianization(ex.presentation);
  const auto& s = ab.space();
  auto& d = c.rec.table("abelianization differential", {"source", "target", "coefficient"});
  SparseMatrix dm = ab.diff(-1);
  for (int j = 0; j < s.dim(-1); ++j)
    for (int i = 0; i < s.dim(0); ++i)
      if (dm.get(i, j) != 0) d.rows.push_back({s.labels(-1)[j], s.labels(0)[i], to_string(dm.get(i, j))});
  std::map<int, int> h;
  for (int deg : s.degrees()) h[deg] = cohomology_at(ab, deg).dim;
  dims_table(c.rec, "abelianization cohomology", h);
  c.rec.certify("H^-1 = H^0 = 0", h[-1] == 0 && h[0] == 0);
  auto cert = verify_truncated_lie_map(ex.presentation, ex.sl2, ex.surjection);
  c.rec.certify("dg Lie map onto sl2", cert.ok && rank(ex.surjection) == ex.sl2.dim(),
                cert.ok ? json{{"rank", rank(ex.surjection)}} : json{{"violation", cert.violation}});
  const auto& lie = ex.presentation.lie;
  json images = json::object();
  bool cycles = true;
  std::vector<Vec> cols;
  for (int gi = 0; gi < ex.presentation.generators.total_dim(); ++gi) {
    int idx = ex.presentation.generator_index(gi);
    if (lie.degree(idx) != 0) continue;
    Vec v = unit_vec(lie.dim(), idx);
    cycles = cycles && is_zero(lie.d(v));
    cols.push_back(v);
    images[lie.label(idx)] = vec_json(ex.sl2.space(), ex.surjection.apply(v));
  }
  bool onto = rank(ex.surjection * SparseMatrix::from_columns(lie.dim(), cols)) == ex.sl2.dim();
  c.rec.certify("degree-0 generators are cycles mapping onto H^0(sl2) = sl2", cycles && onto, {{"images", images}});
  c.rec.notes.push_back("the abelianization is acyclic while sl2 has H^0 of dimension " +
                        std::to_string(cohomology_at(ex.sl2.complex(), 0).dim));
}

void cmd_abelianization(Ctx& c) {
  std::string name = c.str("lie", "sl2_example");
  const auto& v = c.f.get(name);
  std::map<int, int> ab, cbar;
  if (const auto* p = std::get_if<FreeLieTruncated>(&v)) {
    ab = cohomology_dims(abelianization(*p));
    cbar = homology_C_bar(*p);
  } else {
    const auto& g = c.lie();
    int n = c.sym();
    auto w = chevalley_valid_window(g, n);
    ab = cohomology_dims(abelianization(g));
    if (!w) {
      c.rec.notes.push_back("no exact window at symmetric bound " + std::to_string(n));
      c.rec.status = Status::Unknown;
      dims_table(c.rec, "H(g/[g,g])", ab);
      return;
    }
    c.rec.caps["window"] = {w->lo, w->hi};
    cbar = homology_C_bar(g, n, *w);
    for (auto it = ab.begin(); it != ab.end();)
      it = it->first < w->lo || it->first > w->hi ? ab.erase(it) : std::next(it);
  }
  dims_table(c.rec, "H(g/[g,g])", ab);
  dims_table(c.rec, "H(reduced C(g))", cbar);
  auto nonzero = [](std::map<int, int> m) {
    for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
    return m;
  };
  c.rec.certify("reduced C(g) cohomology = abelianization cohomology", nonzero(ab) == nonzero(cbar));
}

using Handler = std::function<void(Ctx&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"verify", cmd_verify},
      {"cohomology", cmd_cohomology},
      {"chevalley", cmd_chevalley},
      {"cobar", cmd_cobar},
      {"adjunction-check", cmd_adjunction},
      {"nerve", cmd_nerve},
      {"pi0", cmd_pi0},
      {"dual-numbers", cmd_dual_numbers},
      {"hull", cmd_hull},
      {"truncation", cmd_truncation},
      {"rees", cmd_rees},
      {"pbw-check", cmd_pbw},
      {"tor", cmd_tor},
      {"quotient-compare", cmd_quotient},
      {"torsor-nerve", cmd_torsor},
      {"tn", cmd_tn},
      {"wbar", cmd_wbar},
      {"kan-check", cmd_kan},
      {"counterexample-sl2", cmd_counterexample},
      {"abelianization-homology", cmd_abelianization},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const auto names = [] {
    std::vector<std::string> out;
    for (const auto& [n, h] : handlers()) out.push_back(n);
    return out;
  }();
  return names;
}

Record run_operation(const ObjectFile& f, const json& op, const RunOptions& o) {
  Record rec;
  rec.operation = op.value("op", std::string());
  rec.inputs = op;
  rec.inputs.erase("op");
  const Handler* h = nullptr;
  for (const auto& [n, fn] : handlers())
    if (n == rec.operation) h = &fn;
  if (!h) throw ValidationError("unknown command '" + rec.operation + "'");
  auto start = std::chrono::steady_clock::now();
  Ctx c{f, op, o, rec};
  try {
    (*h)(c);
  } catch (const ValidationError& e) {
    rec.status = Status::ValidationFailure;
    rec.notes.push_back(std::string("error: ") + e.what());
  }
  if (o.timing) rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

Report run_command(const ObjectFile& f, const std::string& command, const json& fallback, const RunOptions& o,
                   const std::string& source) {
  Report r;
  r.source = source;
  r.seed = o.seed;
  if (command != "run" && std::find(command_names().begin(), command_names().end(), command) == command_names().end())
    throw ValidationError("unknown command '" + command + "'");
  bool any = false;
  for (const auto& op : f.operations)
    if (command == "run" || op.value("op", std::string()) == command) {
      r.records.push_back(run_operation(f, op, o));
      any = true;
    }
  if (!any && command != "run") {
    json op = fallback;
    op["op"] = command;
    r.records.push_back(run_operation(f, op, o));
  }
  return r;
}

}  // namespace dgl
