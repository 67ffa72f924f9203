#include "dgl/deformation.hpp"

#include "dgl/catalog.hpp"
#include "dgl/graded.hpp"
#include "dgl/quillen.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>

namespace dgl {

ArtinianDgAlgebra dual_numbers(int n) {
  if (n < 0) throw ValidationError("dual_numbers: n must be >= 0");
  std::map<int, std::vector<std::string>> comps;
  comps[0].push_back("1");
  comps[-n].push_back("eps");
  GradedSpace sp(comps);
  const int one = sp.offset(0);
  const int eps = n == 0 ? 1 : sp.offset(-n);
  ProductTable p;
  p[{one, one}] = {{one, 1}};
  p[{one, eps}] = {{eps, 1}};
  return ArtinianDgAlgebra(Cdga(CochainComplex::zero_differential(sp), p));
}

// ---- dual numbers ----

namespace {

using Key = std::pair<FormMonomial, int>;

std::vector<Key> degree_one_basis(const DgLieAlgebra& host, int k, int cap, int degree = 1) {
  PolyFormAlgebra om(k, cap);
  std::vector<Key> out;
  for (int a = 0; a <= k; ++a)
    for (const auto& m : om.basis(a))
      for (int e = 0; e < host.dim(); ++e)
        if (host.degree(e) + a == degree) out.emplace_back(m, e);
  return out;
}

// Matrix of a linear map given on basis keys; rows indexed by `rows` (extended on demand
// when `rows` is null).
SparseMatrix key_matrix(const std::vector<Key>& cols, const std::function<FormVec(const FormVec&)>& f,
                        std::map<Key, int>& rows, bool extend) {
  std::vector<std::vector<std::pair<int, Rational>>> entries(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    FormVec img = f(FormVec{{cols[j], Rational(1)}});
    for (const auto& [key, c] : img) {
      auto it = rows.find(key);
      if (it == rows.end()) {
        if (!extend) throw ValidationError("internal: image outside the capped basis");
        it = rows.emplace(key, static_cast<int>(rows.size())).first;
      }
      entries[j].emplace_back(it->second, c);
    }
  }
  SparseMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, c] : entries[j]) m.add_to(r, static_cast<int>(j), c);
  return m;
}

}  // namespace

DualNumbersHomotopy dual_numbers_homotopy(const DgLieAlgebra& g, int n, int levels, int cap) {
  if (levels < 0 || levels > 3) throw ValidationError("dual_numbers_homotopy: levels must be in 0..3");
  DualNumbersHomotopy out;
  out.n = n;
  out.levels = levels;
  out.cap = cap;
  const DgLieAlgebra host = nerve_host(g, dual_numbers(n));
  FormHost h(host);
  const int top = levels + 1;
  std::vector<std::vector<Key>> basis(top + 1);
  std::vector<std::map<Key, int>> index(top + 1);
  for (int k = 0; k <= top; ++k) {
    basis[k] = degree_one_basis(host, k, cap);
    for (std::size_t j = 0; j < basis[k].size(); ++j) index[k][basis[k][j]] = static_cast<int>(j);
  }
  std::vector<int> normalized(top + 1), boundary_rank(top + 1, 0);
  for (int k = 0; k <= top; ++k) {
    std::map<Key, int> drows;
    SparseMatrix stacked = key_matrix(basis[k], [&](const FormVec& v) { return h.d(v); }, drows, true);
    out.level_dims.push_back(static_cast<long>(basis[k].size()) - rank(stacked));
    PolyFormAlgebra om(k, cap);
    for (int i = 1; i <= k; ++i) {
      std::map<Key, int> rows = index[k - 1];
      stacked = stacked.vstack(key_matrix(basis[k], [&](const FormVec& v) { return h.face(om, i, v); }, rows, false));
    }
    auto nk = kernel_basis(stacked);
    normalized[k] = static_cast<int>(nk.size());
    if (k > 0) {
      std::map<Key, int> rows = index[k - 1];
      SparseMatrix d0 = key_matrix(basis[k], [&](const FormVec& v) { return h.face(om, 0, v); }, rows, false);
      std::vector<Vec> images;
      for (const auto& v : nk) images.push_back(d0.apply(v));
      boundary_rank[k] = span_rank(images, rows.size());
    }
  }
  out.level_dims.resize(levels + 1);
  for (int i = 0; i <= levels; ++i) out.nerve_pi.push_back(normalized[i] - boundary_rank[i] - boundary_rank[i + 1]);
  out.oracle_pi = dold_kan_truncated(truncate_good(shift(g.complex(), 1 + n)), levels).pi_dims;
  return out;
}

FormalSpaceReport formal_space_test(const DgLieAlgebra& g) {
  FormalSpaceReport r;
  int lo = 0;
  for (int d : g.space().degrees()) lo = std::min(lo, d);
  for (int d = lo; d <= 0; ++d)
    if (cohomology_at(g.complex(), d).dim > 0) r.obstructing_degrees.push_back(d);
  r.formal = r.obstructing_degrees.empty();
  const int levels = std::min(3, 1 - lo);
  auto hom = dual_numbers_homotopy(g, 0, levels, levels + 1);
  r.nerve_pi = hom.nerve_pi;
  bool higher = false;
  for (std::size_t i = 1; i < r.nerve_pi.size(); ++i) higher = higher || r.nerve_pi[i] != 0;
  r.consistent = (r.formal == !higher) && hom.agree();
  auto h0 = cohomology_at(g.complex(), 0);
  if (h0.dim > 0) {
    // ε·dt ⊗ y for a representative y of a nonzero class in H⁰
    const DgLieAlgebra host = nerve_host(g, dual_numbers(0));
    FormHost fh(host);
    Vec y = zero_vec(host.dim());
    const Vec& rep = h0.representatives.front();
    const int off = g.space().offset(0);
    for (std::size_t k = 0; k < rep.size(); ++k)
      if (rep[k] != 0) y[host.index("eps*" + g.label(off + static_cast<int>(k)))] = rep[k];
    PolyFormAlgebra om(1, 1);
    FormVec loop = fh.tensor(om.dt(1), y);
    if (!fh.is_mc(loop)) throw ValidationError("internal: loop is not Maurer-Cartan");
    r.loop = loop;
  }
  return r;
}

// ---- polynomials ----

std::string to_string(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.empty()) return "0";
  std::string out;
  // highest total degree last
  std::vector<std::pair<Monomial, Rational>> terms(p.begin(), p.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0), db = std::accumulate(b.first.begin(), b.first.end(), 0);
    return da < db;
  });
  for (const auto& [m, c] : terms) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    Rational a = abs(c);
    std::string coef = (a == 1 && !mono.empty()) ? "" : to_string(a);
    std::string term = coef + (coef.empty() || mono.empty() ? "" : "*") + mono;
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

std::string to_string(const PointCount& c) {
  if (!c.exact) return "[" + std::to_string(c.lower) + ", " + std::to_string(c.upper) + "]";
  if (!c.finite) return "affine space of dimension " + std::to_string(c.dimension);
  return std::to_string(c.count);
}

namespace {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

// graded reverse lexicographic
bool grevlex_less(const Monomial& a, const Monomial& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Monomial leading(const Polynomial& p) {
  Monomial best = p.begin()->first;
  for (const auto& [m, c] : p)
    if (grevlex_less(best, m)) best = m;
  return best;
}

void add_term(Polynomial& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b, const Rational& s = 1) {
  Polynomial out = a;
  for (const auto& [m, c] : b) add_term(out, m, s * c);
  return out;
}

Polynomial multiply_monomial(const Polynomial& p, const Monomial& m, const Rational& c) {
  Polynomial out;
  for (const auto& [pm, pc] : p) {
    Monomial q = pm;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += m[i];
    add_term(out, q, pc * c);
  }
  return out;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Polynomial normal_form(Polynomial p, const std::vector<Polynomial>& basis) {
  Polynomial rem;
  while (!p.empty()) {
    Monomial lt = leading(p);
    Rational lc = p.at(lt);
    bool reduced = false;
    for (const auto& g : basis) {
      Monomial lg = leading(g);
      if (!divides(lg, lt)) continue;
      Monomial q = lt;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= lg[i];
      p = poly_add(p, multiply_monomial(g, q, lc / g.at(lg)), -1);
      reduced = true;
      break;
    }
    if (!reduced) {
      add_term(rem, lt, lc);
      p.erase(lt);
    }
  }
  return rem;
}

std::vector<Polynomial> groebner(std::vector<Polynomial> gens) {
  std::vector<Polynomial> g;
  for (auto& p : gens)
    if (!p.empty()) g.push_back(p);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) pairs.emplace_back(j, i);
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    Monomial a = leading(g[i]), b = leading(g[j]), l(a.size());
    for (std::size_t k = 0; k < l.size(); ++k) l[k] = std::max(a[k], b[k]);
    Monomial qa = l, qb = l;
    for (std::size_t k = 0; k < l.size(); ++k) {
      qa[k] -= a[k];
      qb[k] -= b[k];
    }
    Polynomial s = poly_add(multiply_monomial(g[i], qa, 1 / g[i].at(a)), multiply_monomial(g[j], qb, 1 / g[j].at(b)), -1);
    Polynomial r = normal_form(s, g);
    if (r.empty()) continue;
    g.push_back(r);
    for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
  }
  // reduce
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j)
      if (j != i && divides(leading(g[j]), leading(g[i])) && (leading(g[j]) != leading(g[i]) || j < i)) redundant = true;
    if (!redundant) out.push_back(g[i]);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i) others.push_back(out[j]);
    Monomial lt = leading(out[i]);
    Rational lc = out[i].at(lt);
    Polynomial tail = out[i];
    tail.erase(lt);
    Polynomial nf = normal_form(tail, others);
    add_term(nf, lt, lc);
    for (auto& [m, c] : nf) c /= lc;
    out[i] = nf;
  }
  return out;
}

// Standard monomials of C/(basis); nullopt when the quotient is infinite-dimensional.
std::optional<std::vector<Monomial>> standard_monomials(int vars, const std::vector<Polynomial>& basis) {
  std::vector<int> bound(vars, -1);
  for (const auto& g : basis) {
    Monomial l = leading(g);
    int nz = 0, which = -1;
    for (int i = 0; i < vars; ++i)
      if (l[i] > 0) {
        ++nz;
        which = i;
      }
    if (nz == 0) return std::vector<Monomial>{};  // unit ideal
    if (nz == 1 && (bound[which] < 0 || l[which] < bound[which])) bound[which] = l[which];
  }
  for (int b : bound)
    if (b < 0) return std::nullopt;
  std::vector<Monomial> out;
  Monomial m(vars, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == vars) {
      for (const auto& g : basis)
        if (divides(leading(g), m)) return;
      out.push_back(m);
      return;
    }
    for (int e = 0; e < bound[i]; ++e) {
      m[i] = e;
      rec(i + 1);
    }
    m[i] = 0;
  };
  rec(0);
  return out;
}

struct Quotient {
  std::vector<Polynomial> basis;
  std::vector<Monomial> standard;
  std::map<Monomial, int> index;

  SparseMatrix multiplication(const Polynomial& f) const {
    SparseMatrix m(static_cast<int>(standard.size()), static_cast<int>(standard.size()));
    for (std::size_t j = 0; j < standard.size(); ++j) {
      Polynomial p = normal_form(multiply_monomial(f, standard[j], 1), basis);
      for (const auto& [mono, c] : p) m.set(index.at(mono), static_cast<int>(j), c);
    }
    return m;
  }
};

Quotient complete_intersection(int vars, const std::vector<Polynomial>& gens, const std::string& name) {
  for (const auto& p : gens)
    for (const auto& [m, c] : p)
      if (static_cast<int>(m.size()) != vars) throw ValidationError(name + ": monomial with the wrong number of variables");
  if (static_cast<int>(gens.size()) != vars)
    throw ValidationError(name + ": need a sequence of length " + std::to_string(vars) +
                          " (zero-dimensional complete intersections only)");
  Quotient q;
  q.basis = groebner(gens);
  auto std_mono = standard_monomials(vars, q.basis);
  if (!std_mono) throw ValidationError(name + ": not a regular sequence (the quotient is not zero-dimensional)");
  if (std_mono->empty()) throw ValidationError(name + ": not a regular sequence (generates the unit ideal)");
  q.standard = *std_mono;
  for (std::size_t i = 0; i < q.standard.size(); ++i) q.index[q.standard[i]] = static_cast<int>(i);
  return q;
}

}  // namespace

TorResult tor_intersection(int variables, const std::vector<Polynomial>& i, const std::vector<Polynomial>& j, int bound) {
  if (variables < 1) throw ValidationError("tor_intersection: need at least one variable");
  Quotient a = complete_intersection(variables, i, "I");
  Quotient b = complete_intersection(variables, j, "J");
  TorResult out;
  out.quotient_dims = {static_cast<int>(a.standard.size()), static_cast<int>(b.standard.size())};
  // Koszul complex K(f; B): degree p is Λ^p(k^s) ⊗ B, ∂(e_S ⊗ x) = Σ_l (−1)^l e_{S∖s_l} ⊗ f_{s_l} x.
  const int s = static_cast<int>(i.size());
  const int nb = static_cast<int>(b.standard.size());
  std::vector<SparseMatrix> mult;
  for (const auto& f : i) mult.push_back(b.multiplication(f));
  std::vector<std::vector<unsigned>> subsets(s + 1);
  for (unsigned m = 0; m < (1u << s); ++m) subsets[std::popcount(m)].push_back(m);
  auto boundary = [&](int p) {  // Λ^p → Λ^{p−1}
    std::map<unsigned, int> target;
    for (std::size_t t = 0; t < subsets[p - 1].size(); ++t) target[subsets[p - 1][t]] = static_cast<int>(t);
    SparseMatrix m(static_cast<int>(subsets[p - 1].size()) * nb, static_cast<int>(subsets[p].size()) * nb);
    for (std::size_t c = 0; c < subsets[p].size(); ++c) {
      unsigned set = subsets[p][c];
      int l = 0;
      for (int k = 0; k < s; ++k) {
        if (!(set >> k & 1u)) continue;
        int row = target.at(set & ~(1u << k));
        int sign = (l % 2) ? -1 : 1;
        const SparseMatrix& f = mult[k];
        for (int r = 0; r < nb; ++r)
          for (const auto& [col, v] : f.row(r))
            m.add_to(row * nb + r, static_cast<int>(c) * nb + col, v * sign);
        ++l;
      }
    }
    return m;
  };
  std::vector<int> ranks(s + 2, 0);
  for (int p = 1; p <= s; ++p) ranks[p] = rank(boundary(p));
  for (int p = 0; p <= bound; ++p) {
    if (p > s) {
      out.dims.push_back(0);
      continue;
    }
    int dim = static_cast<int>(subsets[p].size()) * nb;
    out.dims.push_back(dim - ranks[p] - ranks[p + 1]);
  }
  return out;
}

// ---- roots and MC points ----

std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw ValidationError("rational_roots: zero polynomial");
  std::vector<Rational> roots;
  std::size_t shift = 0;
  while (c[shift] == 0) ++shift;
  if (shift > 0) roots.push_back(0);
  c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  if (c.size() == 1) return roots;
  // integer coefficients
  mpz_class den = 1;
  for (const auto& x : c) den = lcm(den, mpz_class(x.get_den()));
  std::vector<mpz_class> z;
  for (const auto& x : c) z.push_back(mpz_class(x * den));
  auto divisors = [](mpz_class v) {
    v = abs(v);
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        out.push_back(d);
        if (d * d != v) out.push_back(v / d);
      }
    return out;
  };
  auto eval = [&](const Rational& x) {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  std::set<Rational> found;
  for (const auto& p : divisors(z.front()))
    for (const auto& q : divisors(z.back()))
      for (int sgn : {1, -1}) {
        Rational x(mpz_class(sgn * p), q);
        x.canonicalize();
        if (eval(x) == 0) found.insert(x);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

McPoints mc_points(const DgLieAlgebra& host) {
  McPoints out;
  const auto deg1 = host.indices_in_degree(1);
  const int r = static_cast<int>(deg1.size());
  if (r == 0) {
    out.points = {host.zero()};
    return out;
  }
  bool quadratic = false;
  for (int a : deg1)
    for (int b : deg1)
      if (!host.bracket_basis(a, b).empty()) quadratic = true;
  if (!quadratic) {
    SparseMatrix d = host.total_differential().select_cols(deg1);
    int dim = r - rank(d);
    if (dim == 0) {
      out.points = {host.zero()};
    } else {
      out.finite = false;
      out.dimension = dim;
    }
    return out;
  }
  if (r != 1) {
    out.supported = false;
    return out;
  }
  const Vec e = unit_vec(host.dim(), deg1[0]);
  const Vec lin = host.d(e), quad = scale(Rational(1, 2), host.bracket(e, e));
  std::optional<std::vector<Rational>> common;
  for (int k = 0; k < host.dim(); ++k) {
    if (lin[k] == 0 && quad[k] == 0) continue;
    auto roots = rational_roots({0, lin[k], quad[k]});
    if (!common) {
      common = roots;
    } else {
      std::vector<Rational> keep;
      for (const auto& x : *common)
        if (std::find(roots.begin(), roots.end(), x) != roots.end()) keep.push_back(x);
      common = keep;
    }
  }
  if (!common) {
    out.finite = false;
    out.dimension = 1;
    return out;
  }
  for (const auto& x : *common) out.points.push_back(scale(x, e));
  return out;
}

namespace {

PointCount pi0_of_host(const DgLieAlgebra& host, int depth) {
  PointCount c;
  auto pts = mc_points(host);
  if (!pts.supported) {
    c.exact = false;
    c.lower = 1;
    c.upper = -1;
    c.note = "MC set not enumerable (several quadratic coordinates)";
    return c;
  }
  if (!pts.finite) {
    if (!host.is_abelian()) {
      c.exact = false;
      c.lower = 1;
      c.upper = -1;
      c.note = "linear MC set with a nonabelian gauge action";
      return c;
    }
    int h1 = cohomology_at(host.complex(), 1).dim;
    if (h1 == 0) {
      c.count = 1;
    } else {
      c.finite = false;
      c.dimension = h1;
    }
    c.note = "abelian host: π₀ = H¹";
    return c;
  }
  auto grp = deligne_groupoid(host, pts.points, depth);
  c.exact = grp.exact();
  c.count = grp.components_upper;
  c.lower = grp.components_lower;
  c.upper = grp.components_upper;
  return c;
}

}  // namespace

PointCount classical_part(const DgLieAlgebra& g, const ArtinianDgAlgebra& a, int depth) {
  for (int d : a.algebra().space().degrees())
    if (d != 0) throw ValidationError("classical_part: the artinian algebra must sit in degree 0");
  if (a.dim() == 1) {
    PointCount c;
    c.count = 1;
    c.note = "m = 0";
    return c;
  }
  return pi0_of_host(nerve_host(g, a), depth);
}

PointCount classical_part_direct(const DgLieAlgebra& g, int depth) {
  require_nilpotent(g);
  return pi0_of_host(g, depth);
}

// ---- truncation and hull ----

OneTruncation one_truncation(const DgLieAlgebra& g, const std::optional<std::vector<Vec>>& v) {
  OneTruncation t;
  t.source = g;
  const int n = g.dim();
  std::vector<Vec> image;
  for (int i : g.indices_in_degree(0)) image.push_back(g.d(unit_vec(n, i)));
  std::vector<Vec> im_basis = extend_basis({}, image);
  t.rank_d0 = static_cast<int>(im_basis.size());
  const auto deg1 = g.indices_in_degree(1);
  if (v) {
    for (const auto& x : *v) {
      if (static_cast<int>(x.size()) != n) throw ValidationError("one_truncation: complement vector of the wrong size");
      for (int i = 0; i < n; ++i)
        if (x[i] != 0 && g.degree(i) != 1) throw ValidationError("one_truncation: complement must lie in degree 1");
    }
    if (static_cast<int>(extend_basis(im_basis, *v).size()) != static_cast<int>(v->size()) ||
        t.rank_d0 + static_cast<int>(v->size()) != static_cast<int>(deg1.size()))
      throw ValidationError("one_truncation: V is not a complement to im(d: g0 -> g1)");
    t.complement = *v;
  } else {
    std::vector<Vec> units;
    for (int i : deg1) units.push_back(unit_vec(n, i));
    t.complement = extend_basis(im_basis, units);
  }
  std::vector<Vec> cols = t.complement;
  std::map<int, std::vector<std::string>> comps;
  for (std::size_t k = 0; k < t.complement.size(); ++k) {
    int u = unit_index(t.complement[k]);
    comps[1].push_back(u >= 0 && t.complement[k][u] == 1 ? g.label(u) : "v" + std::to_string(k + 1));
  }
  for (int i = 0; i < n; ++i)
    if (g.degree(i) > 1) {
      cols.push_back(unit_vec(n, i));
      comps[g.degree(i)].push_back(g.label(i));
    }
  GradedSpace space(comps);
  const int m = static_cast<int>(cols.size());
  t.inclusion = SparseMatrix::from_columns(n, cols);
  auto coords = [&](const Vec& w, const std::string& what) {
    auto sol = solve_affine(t.inclusion, w);
    if (!sol) throw ValidationError("one_truncation: " + what + " leaves h; V rejected");
    return sol->particular;
  };
  SparseMatrix total(m, m);
  BracketTable table;
  for (int j = 0; j < m; ++j) {
    Vec dj = coords(g.d(cols[j]), "d(" + space.label_of(j) + ")");
    for (int r = 0; r < m; ++r) total.set(r, j, dj[r]);
    for (int k = j; k < m; ++k) {
      Vec b = coords(g.bracket(cols[j], cols[k]), "[" + space.label_of(j) + ", " + space.label_of(k) + "]");
      SparseRow row;
      for (int r = 0; r < m; ++r)
        if (b[r] != 0) row[r] = b[r];
      if (!row.empty()) table[{j, k}] = row;
    }
  }
  t.h = DgLieAlgebra(CochainComplex(space, degree_blocks(space, space, total, 1)), table);
  return t;
}

HullPresentation hull_presentation(const OneTruncation& t, int order) {
  if (order < 2) throw ValidationError("hull_presentation: order must be >= 2");
  const DgLieAlgebra& h = t.h;
  const auto deg1 = h.indices_in_degree(1), deg2 = h.indices_in_degree(2);
  HullPresentation p;
  p.order = order;
  for (int i : deg1) p.generators.push_back(h.label(i));
  const int r = static_cast<int>(deg1.size());
  auto c = chevalley_C(h, order);
  const SparseMatrix& d = c.coalgebra.total_differential();
  p.relations.assign(deg2.size(), {});
  for (int i = 0; i < c.dim(); ++i) {
    if (c.coalgebra.degree(i) != 0 || c.sym_degree(i) == 0) continue;
    Monomial mono(r, 0);
    for (int letter : c.monomial[i]) mono[letter - deg1.front()] += 1;
    Rational fact = 1;
    for (int e : mono)
      for (int k = 2; k <= e; ++k) fact *= k;
    for (std::size_t j = 0; j < deg2.size(); ++j) {
      Rational coef = d.get(c.linear(deg2[j]), i);
      if (coef != 0) add_term(p.relations[j], mono, -coef / fact);
    }
  }
  return p;
}

PointCount hull_points(const HullPresentation& p, const ArtinianDgAlgebra& a) {
  for (int d : a.algebra().space().degrees())
    if (d != 0) throw ValidationError("hull_points: the artinian algebra must sit in degree 0");
  PointCount c;
  if (a.dim() == 1 || p.generators.empty()) {
    c.count = 1;
    return c;
  }
  if (a.order() > 1) {
    c.exact = false;
    c.lower = 1;
    c.upper = -1;
    c.note = "only square-zero maximal ideals are supported";
    return c;
  }
  // m² = 0: only linear terms survive, coordinatewise over m
  const int r = static_cast<int>(p.generators.size());
  SparseMatrix lin(static_cast<int>(p.relations.size()), r);
  for (std::size_t j = 0; j < p.relations.size(); ++j)
    for (const auto& [m, coef] : p.relations[j])
      if (total_degree(m) == 1)
        for (int i = 0; i < r; ++i)
          if (m[i] == 1) lin.set(static_cast<int>(j), i, coef);
  int dim = (r - rank(lin)) * (a.dim() - 1);
  if (dim == 0)
    c.count = 1;
  else {
    c.finite = false;
    c.dimension = dim;
  }
  return c;
}

PointCount hull_points_over_k(const HullPresentation& p) {
  PointCount c;
  const int r = static_cast<int>(p.generators.size());
  std::vector<Polynomial> rels;
  for (const auto& rel : p.relations)
    if (!rel.empty()) rels.push_back(rel);
  if (rels.empty()) {
    c.finite = r == 0;
    c.count = 1;
    c.dimension = r;
    return c;
  }
  if (r == 1) {
    std::optional<std::vector<Rational>> common;
    for (const auto& rel : rels) {
      int deg = 0;
      for (const auto& [m, coef] : rel) deg = std::max(deg, m[0]);
      std::vector<Rational> coeffs(deg + 1, 0);
      for (const auto& [m, coef] : rel) coeffs[m[0]] = coef;
      auto roots = rational_roots(coeffs);
      if (!common) {
        common = roots;
      } else {
        std::vector<Rational> keep;
        for (const auto& x : *common)
          if (std::find(roots.begin(), roots.end(), x) != roots.end()) keep.push_back(x);
        common = keep;
      }
    }
    c.count = static_cast<long>(common->size());
    c.note = "rational points";
    return c;
  }
  bool linear = true;
  for (const auto& rel : rels)
    for (const auto& [m, coef] : rel) linear = linear && total_degree(m) <= 1;
  if (!linear) {
    c.exact = false;
    c.lower = 0;
    c.upper = -1;
    c.note = "nonlinear system in several variables";
    return c;
  }
  SparseMatrix m(static_cast<int>(rels.size()), r);
  Vec rhs = zero_vec(rels.size());
  for (std::size_t j = 0; j < rels.size(); ++j)
    for (const auto& [mono, coef] : rels[j]) {
      if (total_degree(mono) == 0)
        rhs[j] = -coef;
      else
        for (int i = 0; i < r; ++i)
          if (mono[i] == 1) m.set(static_cast<int>(j), i, coef);
    }
  auto sol = solve_affine(m, rhs);
  if (!sol) {
    c.count = 0;
  } else if (sol->kernel.empty()) {
    c.count = 1;
  } else {
    c.finite = false;
    c.dimension = static_cast<int>(sol->kernel.size());
  }
  return c;
}

// ---- quotient comparison ----

QuotientReport quotient_nerve_compare(const DgLieAlgebra& g, const DgLieAlgebra& h, const std::vector<SparseMatrix>& action,
                                      const ArtinianDgAlgebra& a, const std::vector<Vec>& sample, int depth) {
  QuotientReport r;
  const DgLieAlgebra sd = semidirect(g, h, action);
  const DgLieAlgebra hs = nerve_host(sd, a), hh = nerve_host(h, a);
  std::vector<int> to_s(hh.dim());
  for (int i = 0; i < hh.dim(); ++i) to_s[i] = hs.index(hh.label(i));
  std::vector<bool> in_h(hs.dim(), false);
  for (int i : to_s) in_h[i] = true;
  auto embed = [&](const Vec& x) {
    Vec y = hs.zero();
    for (int i = 0; i < hh.dim(); ++i) y[to_s[i]] = x[i];
    return y;
  };
  std::vector<Vec> big;
  for (const auto& x : sample) big.push_back(embed(x));
  r.fibre = deligne_groupoid(hh, sample, depth);
  r.semidirect = deligne_groupoid(hs, big, depth);
  const int n = static_cast<int>(sample.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (int i = 0; i < n; ++i) parent[find(i)] = find(r.fibre.component[i]);
  for (const auto& [ij, dec] : r.semidirect.hom) {
    auto [i, j] = ij;
    if (dec.kind != GaugeDecision::Kind::Witness || find(i) == find(j)) continue;
    // move x_i by the g-part of the witness, then compare inside Σ_h
    Vec c = dec.witness.log;
    for (int k = 0; k < hs.dim(); ++k)
      if (in_h[k]) c[k] = 0;
    Vec moved = gauge_act(hs, {c}, big[i]);
    Vec back = hh.zero();
    bool inside = true;
    for (int k = 0; k < hs.dim(); ++k)
      if (!in_h[k] && moved[k] != 0) inside = false;
    if (!inside) {
      r.resolved = false;
      r.notes.push_back("g-part of a witness leaves m⊗h");
      continue;
    }
    for (int k = 0; k < hh.dim(); ++k) back[k] = moved[to_s[k]];
    auto fib = gauge_equiv_decide(hh, back, sample[j], depth);
    if (fib.kind == GaugeDecision::Kind::Witness) {
      parent[find(i)] = find(j);
    } else {
      r.resolved = false;
      r.notes.push_back("orbit move not confirmed in the fibre for pair " + std::to_string(i) + "," + std::to_string(j));
    }
  }
  for (int i = 0; i < n; ++i) r.orbit_classes += find(i) == i;
  r.resolved = r.resolved && r.semidirect.exact() && r.fibre.exact();
  r.agree = r.semidirect.components_upper == r.orbit_classes;
  return r;
}

TorsorNerveReport trivial_torsor_nerve(const Cdga& b, const DgLieAlgebra& g, const ArtinianDgAlgebra& a, int levels,
                                       int cap) {
  for (int d : b.space().degrees())
    if (d != 0) throw ValidationError("trivial_torsor_nerve: B must sit in degree 0");
  for (int d : g.space().degrees())
    if (d != 0) throw ValidationError("trivial_torsor_nerve: g must be an ordinary Lie algebra");
  TorsorNerveReport r;
  r.host = nerve_host(tensor_cdga_lie(b, g), a);
  FormHost h(r.host);
  for (int n = 0; n <= levels; ++n) {
    std::vector<int> dims;
    for (int i = 1; i <= n; ++i) dims.push_back(static_cast<int>(k_basis(h, n, i, cap).size()));
    r.level_dims.push_back(dims);
  }
  r.pi0 = pi0_of_host(r.host, 64);
  return r;
}

}  // namespace dgl
