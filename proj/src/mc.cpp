#include "dgl/mc.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace dgl {

DgOps<Vec> dg_ops(const DgLieAlgebra& g) {
  DgOps<Vec> o;
  static_cast<LieOps<Vec>&>(o) = lie_ops(g);
  o.d = [&g](const Vec& x) { return g.d(x); };
  return o;
}

DgOps<FormVec> dg_ops(const FormHost& h) {
  DgOps<FormVec> o;
  static_cast<LieOps<FormVec>&>(o) = h.ops();
  o.d = [&h](const FormVec& x) { return h.d(x); };
  return o;
}

namespace {

bool has_degree(const DgLieAlgebra& g, const Vec& x, int degree) {
  if (static_cast<int>(x.size()) != g.dim()) return false;
  for (int i = 0; i < g.dim(); ++i)
    if (x[i] != 0 && g.degree(i) != degree) return false;
  return true;
}

}  // namespace

McCheck mc_check(const DgLieAlgebra& g, const Vec& x) {
  if (static_cast<int>(x.size()) != g.dim()) throw ValidationError("element size does not match the host");
  McCheck out;
  out.residual = add(g.d(x), scale(Rational(1, 2), g.bracket(x, x)));
  out.ok = is_zero(out.residual);
  return out;
}

int require_nilpotent(const DgLieAlgebra& g) {
  auto n = nilpotency_index(g);
  if (!n) throw ValidationError("host is not nilpotent");
  return *n;
}

Vec gauge_act(const DgLieAlgebra& g, const GaugeElement& e, const Vec& x) {
  if (!has_degree(g, e.log, 0)) throw ValidationError("gauge logarithm must have degree 0 in the host");
  if (!has_degree(g, x, 1)) throw ValidationError("acted element must have degree 1 in the host");
  return gauge_flow(dg_ops(g), e.log, x, g.dim() + 2);
}

FormVec gauge_act(const FormHost& h, const FormVec& y, const FormVec& x) {
  if (!h.homogeneous(y, 0)) throw ValidationError("gauge logarithm must have degree 0");
  if (!h.homogeneous(x, 1)) throw ValidationError("acted element must have degree 1");
  return gauge_flow(dg_ops(h), y, x, h.lie().dim() + 2);
}

GaugeElement gauge_compose(const DgLieAlgebra& g, const GaugeElement& a, const GaugeElement& b) {
  return {bch(b.log, a.log, g.dim() + 2, lie_ops(g))};
}

FormVec gauge_compose(const FormHost& h, const FormVec& a, const FormVec& b) {
  return bch(b, a, h.lie().dim() + 2, h.ops());
}

std::string to_string(GaugeDecision::Kind k) {
  switch (k) {
    case GaugeDecision::Kind::Witness: return "witness";
    case GaugeDecision::Kind::Obstruction: return "obstruction";
    case GaugeDecision::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

// ---- staged equivalence ----

GaugeDecision gauge_equiv_decide(const DgLieAlgebra& h, const Vec& x, const Vec& x2, int depth) {
  require_nilpotent(h);
  if (!mc_check(h, x).ok || !mc_check(h, x2).ok) throw ValidationError("gauge_equiv_decide needs Maurer-Cartan elements");
  const LcsBasis b = lcs_rebase(h);
  const DgLieAlgebra& a = b.lie;
  const int n = a.dim();
  const Vec X = b.from_original.apply(x), X2 = b.from_original.apply(x2);
  const int top = b.weight.empty() ? 0 : *std::max_element(b.weight.begin(), b.weight.end());

  GaugeDecision out;
  Vec base = zero_vec(n);
  std::vector<Vec> dirs;
  bool exhaustive = true;
  auto residual = [&](const Vec& y, int p) {
    Vec r = sub(gauge_flow(dg_ops(a), y, X, n + 2), X2);
    Vec w;
    for (int i = 0; i < n; ++i)
      if (b.weight[i] == p) w.push_back(r[i]);
    return w;
  };
  auto combo = [&](const std::vector<Vec>& ds, const Vec& u) {
    Vec y = base;
    for (std::size_t j = 0; j < ds.size(); ++j) axpy(y, u[j], ds[j]);
    return y;
  };
  const std::vector<int> deg0 = a.indices_in_degree(0);
  for (int p = 1; p <= top; ++p) {
    if (p > depth) {
      out.kind = GaugeDecision::Kind::Unknown;
      out.stage = p;
      out.note = "depth exhausted before stage " + std::to_string(p);
      return out;
    }
    std::vector<Vec> fresh;
    for (int i : deg0)
      if (b.weight[i] == p) fresh.push_back(unit_vec(n, i));
    std::vector<Vec> all = dirs;
    all.insert(all.end(), fresh.begin(), fresh.end());
    const std::size_t m = all.size();
    const Vec r0 = residual(base, p);
    const std::size_t rows = r0.size();

    // Is the weight-p residual affine in every open parameter?
    bool affine = exhaustive && m <= 24;
    std::vector<Vec> col(m);
    if (affine) {
      for (std::size_t j = 0; j < m; ++j) {
        Vec u = zero_vec(m);
        u[j] = 1;
        col[j] = sub(residual(combo(all, u), p), r0);
      }
      for (std::size_t j = 0; j < m && affine; ++j)
        for (std::size_t k = j; k < m && affine; ++k) {
          Vec u = zero_vec(m);
          u[j] += 1;
          u[k] += 1;
          Vec lhs = sub(residual(combo(all, u), p), r0);
          if (lhs != add(col[j], col[k])) affine = false;
        }
    }
    std::vector<Vec> use = affine ? all : fresh;
    if (!affine) {
      exhaustive = false;
      col.assign(use.size(), {});
      for (std::size_t j = 0; j < use.size(); ++j) col[j] = sub(residual(add(base, use[j]), p), r0);
    }
    SparseMatrix mat(static_cast<int>(rows), static_cast<int>(use.size()));
    for (std::size_t j = 0; j < use.size(); ++j)
      for (std::size_t r = 0; r < rows; ++r) mat.set(static_cast<int>(r), static_cast<int>(j), col[j][r]);
    Vec rhs = scale(-1, r0);
    auto sol = solve_affine(mat, rhs);
    if (!sol) {
      out.stage = p;
      if (exhaustive) {
        out.kind = GaugeDecision::Kind::Obstruction;
        out.exhaustive = true;
        out.obstruction_matrix = mat;
        out.obstruction_rhs = rhs;
        out.note = "inconsistent affine system at stage " + std::to_string(p);
      } else {
        out.kind = GaugeDecision::Kind::Unknown;
        out.note = "stage " + std::to_string(p) + " unsolvable after fixing earlier parameters";
      }
      return out;
    }
    Vec nb = base;
    for (std::size_t j = 0; j < use.size(); ++j) axpy(nb, sol->particular[j], use[j]);
    std::vector<Vec> nd;
    for (const auto& k : sol->kernel) {
      Vec v = zero_vec(n);
      for (std::size_t j = 0; j < use.size(); ++j) axpy(v, k[j], use[j]);
      nd.push_back(v);
    }
    base = nb;
    dirs = nd;
  }
  Vec y = b.to_original.apply(base);
  if (gauge_act(h, {y}, x) != x2) {
    out.kind = GaugeDecision::Kind::Unknown;
    out.note = "candidate failed verification";
    return out;
  }
  out.kind = GaugeDecision::Kind::Witness;
  out.witness = {y};
  out.exhaustive = exhaustive;
  if (exhaustive) {
    AffineSolution fam;
    fam.particular = y;
    for (const auto& v : dirs) fam.kernel.push_back(b.to_original.apply(v));
    out.family = fam;
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void join(int i, int j) { parent[find(i)] = find(j); }
  int count() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) c += find(i) == i;
    return c;
  }
};

}  // namespace

DeligneGroupoid deligne_groupoid(const DgLieAlgebra& h, const std::vector<Vec>& sample, int depth) {
  DeligneGroupoid out;
  out.objects = sample;
  const int n = static_cast<int>(sample.size());
  UnionFind witnessed(n), possible(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto dec = gauge_equiv_decide(h, sample[i], sample[j], depth);
      if (dec.kind == GaugeDecision::Kind::Witness) {
        witnessed.join(i, j);
        possible.join(i, j);
      } else if (dec.kind == GaugeDecision::Kind::Unknown) {
        possible.join(i, j);
      }
      out.hom.emplace(std::make_pair(i, j), std::move(dec));
    }
  out.components_upper = witnessed.count();
  out.components_lower = possible.count();
  for (int i = 0; i < n; ++i) out.component.push_back(witnessed.find(i));
  return out;
}

// ---- paths ----

PathSolution path_solve(const FormHost& h, const Vec& x0, const FormVec& y, int cap) {
  const DgLieAlgebra& g = h.lie();
  if (!mc_check(g, x0).ok) throw ValidationError("path_solve: x0 is not Maurer-Cartan");
  if (!has_degree(g, x0, 1)) throw ValidationError("path_solve: x0 must have degree 1");
  for (const auto& [key, c] : y) {
    if (key.first.exps.size() != 1) throw ValidationError("path_solve: y must be a polynomial in one variable");
    if (key.first.mask != 0) throw ValidationError("path_solve: y must not contain dt");
    if (g.degree(key.second) != 0) throw ValidationError("path_solve: y must have degree 0");
  }
  const FormVec dy = h.split_dt(h.d(y), 1).first;
  const FormVec start = h.constant(1, x0);
  PathSolution out;
  FormVec x = start;
  const int limit = g.dim() + h.poly_degree(y) + 8;
  for (;;) {
    ++out.iterations;
    if (out.iterations > limit) throw ValidationError("path_solve: Picard iteration did not terminate");
    FormVec next = h.add(start, h.integrate(h.add(dy, h.bracket(x, y)), 1));
    if (next == x) break;
    x = next;
  }
  if (h.poly_degree(x) > cap)
    throw ValidationError("path_solve: cap too small, needs D >= " + std::to_string(h.poly_degree(x)));
  out.x = x;
  out.z = h.add(x, h.wedge_dt(1, y));
  if (!h.is_mc(out.z)) throw ValidationError("path_solve: result failed the Maurer-Cartan check");
  return out;
}

bool in_k(const FormHost& h, int i, const FormVec& eta) {
  for (const auto& [key, c] : eta) {
    const auto& m = key.first;
    if (static_cast<int>(m.exps.size()) < i) return false;
    for (std::size_t j = i; j < m.exps.size(); ++j)
      if (m.exps[j] != 0) return false;
    if (m.exps[i - 1] < 1) return false;
    if (m.mask >> (i - 1)) return false;
    if (m.degree() + h.lie().degree(key.second) != 0) return false;
  }
  return true;
}

std::vector<FormVec> k_basis(const FormHost& h, int n, int i, int cap) {
  std::vector<FormVec> out;
  PolyFormAlgebra omega(n, cap);
  for (int deg = 0; deg < i; ++deg)
    for (const auto& m : omega.basis(deg)) {
      for (int e = 0; e < h.lie().dim(); ++e) {
        if (h.lie().degree(e) != -deg) continue;
        FormVec v{{{m, e}, Rational(1)}};
        if (in_k(h, i, v)) out.push_back(v);
      }
    }
  return out;
}

FormVec mc_compose(const FormHost& h, int n, const std::vector<FormVec>& eta, const Vec& x0) {
  if (static_cast<int>(eta.size()) != n) throw ValidationError("mc_compose: need one factor per direction");
  if (!mc_check(h.lie(), x0).ok) throw ValidationError("mc_compose: x0 is not Maurer-Cartan");
  FormVec z = h.constant(n, x0);
  for (int i = 1; i <= n; ++i) {
    FormVec e = h.extend(eta[i - 1], n);
    if (!in_k(h, i, e)) throw ValidationError("mc_compose: factor " + std::to_string(i) + " is not in k_" + std::to_string(i));
    z = gauge_act(h, e, z);
  }
  return z;
}

McDecomposition mc_decompose(const FormHost& h, int n, const FormVec& z) {
  if (!h.homogeneous(z, 1) || !h.is_mc(z)) throw ValidationError("mc_decompose: not a Maurer-Cartan element");
  for (const auto& [key, c] : z)
    if (static_cast<int>(key.first.exps.size()) != n) throw ValidationError("mc_decompose: wrong number of variables");
  McDecomposition out;
  out.eta.assign(n, {});
  FormVec cur = z;
  const int limit = h.lie().dim() + 4;
  for (int j = n; j >= 1; --j) {
    const FormVec x0 = h.at_zero(cur, j);
    const FormVec y = h.split_dt(cur, j).second;
    FormVec eta;
    for (int it = 0;; ++it) {
      if (it > limit) throw ValidationError("mc_decompose: logarithm iteration did not terminate");
      FormVec err = h.add(y, h.scale(-1, h.split_dt(gauge_act(h, eta, x0), j).second));
      if (err.empty()) break;
      eta = h.add(eta, h.integrate(err, j));
    }
    if (gauge_act(h, eta, x0) != cur) throw ValidationError("mc_decompose: reconstruction failed in direction " + std::to_string(j));
    out.eta[j - 1] = eta;
    cur = x0;
  }
  out.x0 = h.constant_part(cur);
  if (cur != h.constant(n, out.x0)) throw ValidationError("mc_decompose: residual form dependence");
  return out;
}

FormVec gauge_log(const FormHost& h, const std::vector<FormVec>& eta) {
  FormVec c;
  for (const auto& e : eta) c = gauge_compose(h, e, c);
  return c;
}

CrossSection pseudo_cross_section(const FormHost& h, int n, const FormVec& z) {
  auto dec = mc_decompose(h, n, z);
  return {gauge_log(h, dec.eta), dec.x0};
}

std::optional<std::string> simplicial_identity_violation(const FormHost& h, int n, int cap, const FormVec& z) {
  auto omega = [&](int m) { return PolyFormAlgebra(m, cap); };
  auto d = [&](int level, int i, const FormVec& v) { return h.face(omega(level), i, v); };
  auto s = [&](int level, int i, const FormVec& v) { return h.degeneracy(omega(level), i, v); };
  for (int j = 0; j <= n && n >= 2; ++j)
    for (int i = 0; i < j; ++i)
      if (d(n - 1, i, d(n, j, z)) != d(n - 1, j - 1, d(n, i, z)))
        return "d" + std::to_string(i) + " d" + std::to_string(j) + " != d" + std::to_string(j - 1) + " d" + std::to_string(i);
  for (int j = 0; j <= n; ++j) {
    FormVec sj = s(n, j, z);
    for (int i = 0; i <= n + 1; ++i) {
      FormVec lhs = d(n + 1, i, sj);
      FormVec rhs;
      if (i < j)
        rhs = s(n - 1, j - 1, d(n, i, z));
      else if (i == j || i == j + 1)
        rhs = z;
      else
        rhs = s(n - 1, j, d(n, i - 1, z));
      if (lhs != rhs) return "d" + std::to_string(i) + " s" + std::to_string(j) + " identity fails";
    }
    for (int i = 0; i <= j; ++i)
      if (s(n + 1, i, sj) != s(n + 1, j + 1, s(n, i, z)))
        return "s" + std::to_string(i) + " s" + std::to_string(j) + " identity fails";
  }
  return std::nullopt;
}

std::vector<int> NerveSimplexSet::parameter_dims() const {
  std::vector<int> out;
  for (int i = 1; i <= level; ++i) out.push_back(static_cast<int>(k_basis(host, level, i, cap).size()));
  return out;
}

FormVec NerveSimplexSet::face(int i, const FormVec& z) const { return host.face(PolyFormAlgebra(level, cap), i, z); }

FormVec NerveSimplexSet::degeneracy(int i, const FormVec& z) const {
  return host.degeneracy(PolyFormAlgebra(level, cap), i, z);
}

Certificate NerveSimplexSet::verify() const {
  for (std::size_t k = 0; k < simplices.size(); ++k) {
    const auto& z = simplices[k];
    if (!host.homogeneous(z, 1) || !host.is_mc(z)) return {false, "simplex " + std::to_string(k) + " is not Maurer-Cartan"};
    if (host.poly_degree(z) > cap) return {false, "simplex " + std::to_string(k) + " exceeds the cap"};
    if (auto v = simplicial_identity_violation(host, level, cap, z)) return {false, "simplex " + std::to_string(k) + ": " + *v};
    for (int i = 0; i <= level && level > 0; ++i)
      if (!host.is_mc(face(i, z))) return {false, "face of simplex " + std::to_string(k) + " is not Maurer-Cartan"};
  }
  return {};
}

DgLieAlgebra nerve_host(const DgLieAlgebra& g, const ArtinianDgAlgebra& a) {
  return tensor_cdga_lie(a.maximal_ideal(), g);
}

NerveSimplexSet nerve(const DgLieAlgebra& g, const ArtinianDgAlgebra& a, int n, int cap) {
  NerveSimplexSet s;
  s.host = FormHost(nerve_host(g, a));
  s.level = n;
  s.cap = cap;
  require_nilpotent(s.host.lie());
  return s;
}

Pi0Report nerve_pi0(const DgLieAlgebra& host, const std::vector<Vec>& sample, int depth) {
  Pi0Report r;
  r.groupoid = deligne_groupoid(host, sample, depth);
  r.lower = r.groupoid.components_lower;
  r.upper = r.groupoid.components_upper;
  return r;
}

// ---- horns ----

FormVec map_coefficients(const FormVec& z, const SparseMatrix& m) {
  const SparseMatrix mt = m.transpose();
  FormVec out;
  for (const auto& [key, c] : z)
    for (const auto& [r, v] : mt.row(key.second)) {
      auto k = std::make_pair(key.first, r);
      auto& slot = out[k];
      slot += c * v;
      if (slot == 0) out.erase(k);
    }
  return out;
}

namespace {

using RowKey = std::tuple<int, FormMonomial, int>;

struct Staged {
  const FormHost* host;
  std::vector<int> weight;
  const std::vector<int>* target_weight = nullptr;
  SparseMatrix f;  // adapted target × adapted source
  int n = 0;
  int k = 0;
  std::map<int, FormVec> faces;
  std::optional<FormVec> image;

  template <class Fn>
  void collect(const FormVec& v, int tag, const std::vector<int>& w, int p, Fn&& put) const {
    for (const auto& [key, c] : v)
      if (w[key.second] == p) put(RowKey{tag, key.first, key.second}, c);
  }

  std::optional<FormVec> solve(int max_cap) const {
    const FormHost& a = *host;
    const int top = weight.empty() ? 0 : *std::max_element(weight.begin(), weight.end());
    FormVec z;
    PolyFormAlgebra big(n, max_cap);
    for (int p = 1; p <= top; ++p) {
      // known right-hand sides at weight p
      std::map<RowKey, Rational> rhs;
      auto put_rhs = [&](const RowKey& key, const Rational& c) { rhs[key] += c; };
      collect(a.scale(-1, a.mc_residual(z)), -1, weight, p, put_rhs);
      for (const auto& [i, face] : faces)
        collect(a.add(face, a.scale(-1, a.face(big, i, z))), i, weight, p, put_rhs);
      if (image) collect(a.add(*image, a.scale(-1, map_coefficients(z, f))), n + 1, *target_weight, p, put_rhs);
      int start = 0;
      for (const auto& [key, c] : rhs) start = std::max(start, std::get<1>(key).poly_degree());
      bool done = false;
      for (int cap = std::min(start + 1, max_cap); cap <= max_cap && !done; ++cap) {
        PolyFormAlgebra omega(n, cap);
        std::vector<FormVec> cols;
        for (int deg = 0; deg <= n; ++deg)
          for (const auto& m : omega.basis(deg))
            for (int e = 0; e < a.lie().dim(); ++e)
              if (weight[e] == p && a.lie().degree(e) + deg == 1) cols.push_back(FormVec{{{m, e}, Rational(1)}});
        std::map<RowKey, int> row_of;
        std::vector<std::map<int, Rational>> entries;  // per column: row -> value
        auto row = [&](const RowKey& key) {
          auto [it, fresh] = row_of.emplace(key, static_cast<int>(row_of.size()));
          return it->second;
        };
        for (const auto& [key, c] : rhs) row(key);
        for (const auto& u : cols) {
          std::map<int, Rational> col;
          auto put = [&](const RowKey& key, const Rational& c) { col[row(key)] += c; };
          collect(a.d(u), -1, weight, p, put);
          for (const auto& [i, face] : faces) collect(a.face(omega, i, u), i, weight, p, put);
          if (image) collect(map_coefficients(u, f), n + 1, *target_weight, p, put);
          entries.push_back(std::move(col));
        }
        SparseMatrix mat(static_cast<int>(row_of.size()), static_cast<int>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j)
          for (const auto& [r, v] : entries[j]) mat.add_to(r, static_cast<int>(j), v);
        Vec b = zero_vec(row_of.size());
        for (const auto& [key, c] : rhs) b[row_of.at(key)] = c;
        auto sol = solve_affine(mat, b);
        if (!sol) continue;
        for (std::size_t j = 0; j < cols.size(); ++j)
          if (sol->particular[j] != 0) z = a.add(z, a.scale(sol->particular[j], cols[j]));
        done = true;
      }
      if (!done) return std::nullopt;
    }
    if (!a.is_mc(z)) return std::nullopt;
    for (const auto& [i, face] : faces)
      if (a.face(big, i, z) != face) return std::nullopt;
    if (image && map_coefficients(z, f) != *image) return std::nullopt;
    return z;
  }
};

void check_horn(int n, int k, const std::map<int, FormVec>& faces) {
  if (n < 1 || k < 0 || k > n) throw ValidationError("horn index out of range");
  for (int i = 0; i <= n; ++i)
    if (i != k && !faces.count(i)) throw ValidationError("horn is missing face " + std::to_string(i));
}

}  // namespace

std::optional<FormVec> fill_horn(const FormHost& h, int n, int k, const std::map<int, FormVec>& faces, int max_cap) {
  check_horn(n, k, faces);
  const LcsBasis b = lcs_rebase(h.lie());
  FormHost adapted(b.lie);
  Staged st;
  st.host = &adapted;
  st.weight = b.weight;
  st.n = n;
  st.k = k;
  for (const auto& [i, face] : faces)
    if (i != k) st.faces[i] = map_coefficients(face, b.from_original);
  auto z = st.solve(max_cap);
  if (!z) return std::nullopt;
  return map_coefficients(*z, b.to_original);
}

std::optional<FormVec> lift_horn(const FormHost& source, const FormHost& target, const SparseMatrix& f, int n, int k,
                                 const std::map<int, FormVec>& faces, const FormVec& image, int max_cap) {
  check_horn(n, k, faces);
  if (verify_lie_map(source.lie(), target.lie(), f).ok == false) throw ValidationError("lift_horn: f is not a dg Lie map");
  if (rank(f) != target.lie().dim()) throw ValidationError("lift_horn: f is not surjective");
  const LcsBasis b = lcs_rebase(source.lie());
  const LcsBasis bt = lcs_rebase(target.lie());
  FormHost adapted(b.lie);
  Staged st;
  st.host = &adapted;
  st.weight = b.weight;
  st.target_weight = &bt.weight;
  st.f = bt.from_original * f * b.to_original;
  st.n = n;
  st.k = k;
  for (const auto& [i, face] : faces)
    if (i != k) st.faces[i] = map_coefficients(face, b.from_original);
  st.image = map_coefficients(image, bt.from_original);
  auto z = st.solve(max_cap);
  if (!z) return std::nullopt;
  return map_coefficients(*z, b.to_original);
}

KanReport kan_check(const FormHost& h, int n, const std::vector<FormVec>& simplices, int max_cap) {
  if (n < 1 || n > 3) throw ValidationError("kan_check supports levels 1..3");
  KanReport r;
  PolyFormAlgebra omega(n, max_cap);
  for (const auto& z : simplices)
    for (int k = 0; k <= n; ++k) {
      std::map<int, FormVec> faces;
      for (int i = 0; i <= n; ++i)
        if (i != k) faces[i] = h.face(omega, i, z);
      ++r.horns;
      if (fill_horn(h, n, k, faces, max_cap)) {
        ++r.filled;
      } else if (r.ok) {
        r.ok = false;
        r.failure = "no filler for horn " + std::to_string(k) + " at level " + std::to_string(n) + " within cap " +
                    std::to_string(max_cap);
      }
    }
  return r;
}

// ---- sampling ----

Vec sample_mc(const DgLieAlgebra& h, std::mt19937& rng) {
  auto lcs = lower_central_series(h);
  const int n = h.dim();
  std::vector<Vec> last;
  for (const auto& v : lcs.back()) {
    bool deg1 = true;
    for (int i = 0; i < n; ++i) deg1 = deg1 && (v[i] == 0 || h.degree(i) == 1);
    if (deg1) last.push_back(v);
  }
  std::uniform_int_distribution<int> c(-2, 2), small(-1, 1);
  Vec z = zero_vec(n);
  if (!last.empty()) {
    SparseMatrix dm = h.total_differential() * SparseMatrix::from_columns(n, last);
    for (const auto& k : kernel_basis(dm)) {
      Vec v = zero_vec(n);
      for (std::size_t j = 0; j < k.size(); ++j) axpy(v, k[j], last[j]);
      axpy(z, Rational(c(rng)), v);
    }
  }
  Vec y = zero_vec(n);
  for (int i : h.indices_in_degree(0)) y[i] = small(rng);
  return gauge_act(h, GaugeElement{y}, z);
}

FormVec sample_simplex(const FormHost& h, int n, int cap, std::mt19937& rng) {
  std::vector<FormVec> eta;
  std::uniform_int_distribution<int> c(-1, 1);
  for (int i = 1; i <= n; ++i) {
    auto basis = k_basis(h, n, i, cap);
    FormVec e;
    if (!basis.empty()) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
      for (int t = 0; t < 3; ++t) e = h.add(e, h.scale(c(rng), basis[pick(rng)]));
    }
    eta.push_back(e);
  }
  return mc_compose(h, n, eta, sample_mc(h.lie(), rng));
}

}  // namespace dgl
