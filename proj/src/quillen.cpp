#include "dgl/quillen.hpp"

#include "dgl/catalog.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dgl {

namespace {

using Poly = std::map<std::vector<int>, Rational>;

void add_term(Poly& p, const std::vector<int>& w, const Rational& c) {
  if (c == 0) return;
  auto& v = p[w];
  v += c;
  if (v == 0) p.erase(w);
}

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Sorts a word in a free graded-commutative algebra; returns the Koszul sign,
// or 0 when an odd letter repeats.
int sort_signed(std::vector<int>& w, const std::function<int(int)>& parity) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j - 1] >= w[j]; --j) {
      if (w[j - 1] == w[j]) {
        if (parity(w[j]) & 1) return 0;
        break;
      }
      sign *= koszul(parity(w[j - 1]), parity(w[j]));
      std::swap(w[j - 1], w[j]);
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i - 1] == w[i] && (parity(w[i]) & 1)) return 0;
  return sign;
}

}  // namespace

namespace {

// Monomials with total weight above `max_weight` (when weights are given) are
// dropped, and so are the terms of d landing on them.
ChevalleyCoalgebra build_chevalley(const DgLieAlgebra& g, int bound, const std::vector<int>* weights, int max_weight) {
  if (bound < 0) throw ValidationError("symmetric bound must be >= 0");
  ChevalleyCoalgebra out;
  out.lie = g;
  out.bound = bound;
  const int n = g.dim();
  auto vdeg = [&](int k) { return g.degree(k) - 1; };
  auto parity = [&](int k) { return vdeg(k) & 1; };

  std::vector<std::vector<int>> monos{{}};
  std::vector<std::vector<int>> layer{{}};
  for (int s = 1; s <= bound; ++s) {
    std::vector<std::vector<int>> next;
    for (const auto& m : layer) {
      int start = m.empty() ? 0 : m.back();
      int wm = 0;
      if (weights)
        for (int k : m) wm += (*weights)[k];
      for (int k = start; k < n; ++k) {
        if (!m.empty() && k == m.back() && parity(k)) continue;
        if (weights && wm + (*weights)[k] > max_weight) continue;
        auto w = m;
        w.push_back(k);
        next.push_back(w);
      }
    }
    monos.insert(monos.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  auto total_degree = [&](const std::vector<int>& m) {
    int d = 0;
    for (int k : m) d += vdeg(k);
    return d;
  };
  std::stable_sort(monos.begin(), monos.end(), [&](const auto& a, const auto& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::map<int, std::vector<std::string>> comps;
  for (const auto& m : monos) {
    std::string label;
    for (int k : m) label += (label.empty() ? "s" : ".s") + g.label(k);
    comps[total_degree(m)].push_back(m.empty() ? "1" : label);
  }
  GradedSpace space(comps);
  for (int i = 0; i < static_cast<int>(monos.size()); ++i) out.index_of[monos[i]] = i;
  out.monomial = monos;
  const int dim = static_cast<int>(monos.size());

  auto to_index = [&](const Poly& p, int col, SparseMatrix& m) {
    for (const auto& [w, c] : p) {
      auto it = out.index_of.find(w);
      if (it == out.index_of.end()) {
        if (weights) continue;
        throw ValidationError("chevalley_C: monomial above the bound");
      }
      m.add_to(it->second, col, c);
    }
  };

  // Differential.
  SparseMatrix dg = g.total_differential();
  SparseMatrix d(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& w = monos[i];
    Poly p;
    int before = 0;
    for (std::size_t a = 0; a < w.size(); ++a) {
      int sign0 = parity_sign(before);
      for (int k = 0; k < n; ++k) {
        Rational c = dg.get(k, w[a]);
        if (c == 0) continue;
        auto v = w;
        v[a] = k;
        int s = sort_signed(v, parity);
        if (s) add_term(p, v, -c * sign0 * s);
      }
      before += parity(w[a]);
    }
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t b = a + 1; b < w.size(); ++b) {
        int pa = 0, pb = 0;
        for (std::size_t l = 0; l < a; ++l) pa += parity(w[l]);
        for (std::size_t l = 0; l < b; ++l)
          if (l != a) pb += parity(w[l]);
        int sign = koszul(parity(w[a]), pa) * koszul(parity(w[b]), pb) * parity_sign(g.degree(w[a]));
        std::vector<int> rest;
        for (std::size_t l = 0; l < w.size(); ++l)
          if (l != a && l != b) rest.push_back(w[l]);
        for (const auto& [k, c] : g.bracket_basis(w[a], w[b])) {
          std::vector<int> v{k};
          v.insert(v.end(), rest.begin(), rest.end());
          int s = sort_signed(v, parity);
          if (s) add_term(p, v, c * sign * s);
        }
      }
    to_index(p, i, d);
  }

  // Shuffle coproduct.
  std::vector<Tensor2> delta(dim);
  for (int i = 0; i < dim; ++i) {
    const auto& w = monos[i];
    const int len = static_cast<int>(w.size());
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::vector<int> left, right;
      int sign = 1;
      int right_parity = 0;
      for (int a = 0; a < len; ++a) {
        if (mask & (1 << a)) {
          sign *= koszul(parity(w[a]), right_parity);
          left.push_back(w[a]);
        } else {
          right.push_back(w[a]);
          right_parity += parity(w[a]);
        }
      }
      auto key = std::make_pair(out.index_of.at(left), out.index_of.at(right));
      auto& v = delta[i][key];
      v += sign;
      if (v == 0) delta[i].erase(key);
    }
  }
  Vec counit = unit_vec(dim, out.index_of.at({}));
  out.coalgebra = UnitalCoalgebra(CochainComplex(space, degree_blocks(space, space, d, 1)), delta, counit, "1");
  return out;
}

}  // namespace

ChevalleyCoalgebra chevalley_C(const DgLieAlgebra& g, int bound) { return build_chevalley(g, bound, nullptr, 0); }

CochainComplex chevalley_reduced(const ChevalleyCoalgebra& c) {
  auto r = reduced(c.coalgebra);
  return r.complex;
}

// ---------------------------------------------------------------------------
// Cobar construction

CobarLie cobar_L(const UnitalCoalgebra& x, int bound) {
  CobarLie out;
  out.source = x;
  out.bound = bound;
  out.reduced = reduced(x);
  const auto& rs = out.reduced.complex.space();
  std::map<int, std::vector<std::string>> comps;
  for (const auto& [d, labels] : rs.components()) {
    auto& o = comps[d + 1];
    for (const auto& l : labels) o.push_back("s^-1" + l);
  }
  GradedSpace gens(comps);
  const int m = rs.total_dim();
  if (m == 0) {
    out.free = free_lie(gens, std::max(bound, 1));
    return out;
  }
  FreeLieTruncated f = free_lie(gens, bound);
  const int n = f.lie.dim();
  SparseMatrix dx = out.reduced.complex.total_differential();
  std::vector<Vec> images(m, zero_vec(n));
  for (int r = 0; r < m; ++r) {
    Vec& img = images[r];
    Vec dr = dx.column(r);
    for (int k = 0; k < m; ++k)
      if (dr[k] != 0) img[f.generator_index(k)] -= dr[k];
    for (const auto& [ab, c] : out.reduced.delta_bar[r]) {
      Vec b = f.lie.bracket(unit_vec(n, f.generator_index(ab.first)), unit_vec(n, f.generator_index(ab.second)));
      axpy(img, -Rational(1, 2) * c * parity_sign(rs.degree_of(ab.first)), b);
    }
  }
  out.free = f.with_differential(images);
  return out;
}

// ---------------------------------------------------------------------------
// Convolution algebra

Convolution convolution_lie(const UnitalCoalgebra& x, const DgLieAlgebra& g) {
  Convolution out;
  out.reduced = reduced(x);
  out.target = g;
  const auto& rs = out.reduced.complex.space();
  const int m = rs.total_dim(), n = g.dim();
  std::vector<std::tuple<int, int, int>> items;  // (degree, r, k)
  for (int r = 0; r < m; ++r)
    for (int k = 0; k < n; ++k) items.emplace_back(g.degree(k) - rs.degree_of(r), r, k);
  std::sort(items.begin(), items.end());
  std::map<int, std::vector<std::string>> comps;
  for (const auto& [d, r, k] : items) {
    out.index_of[{r, k}] = static_cast<int>(out.pair_of.size());
    out.pair_of.push_back({r, k});
    comps[d].push_back("[" + rs.label_of(r) + "|" + g.label(k) + "]");
  }
  GradedSpace space(comps);
  const int dim = static_cast<int>(items.size());
  auto deg = [&](int i) { return space.degree_of(i); };

  SparseMatrix dg = g.total_differential();
  SparseMatrix dx = out.reduced.complex.total_differential();
  SparseMatrix d(dim, dim);
  for (int i = 0; i < dim; ++i) {
    auto [r, k] = out.pair_of[i];
    for (int k2 = 0; k2 < n; ++k2) {
      Rational c = dg.get(k2, k);
      if (c != 0) d.add_to(out.index_of.at({r, k2}), i, c);
    }
    // f∘d_X: (r',k) with d x̄_{r'} containing x̄_r
    for (int r2 = 0; r2 < m; ++r2) {
      Rational c = dx.get(r, r2);
      if (c != 0) d.add_to(out.index_of.at({r2, k}), i, -parity_sign(deg(i)) * c);
    }
  }
  // Which x̄_t have a⊗b in Δ̄, indexed by (a, b).
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> occurs;
  for (int t = 0; t < m; ++t)
    for (const auto& [ab, c] : out.reduced.delta_bar[t]) occurs[ab].push_back({t, c});
  BracketTable table;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      auto [a, k] = out.pair_of[i];
      auto [b, l] = out.pair_of[j];
      auto it = occurs.find({a, b});
      if (it == occurs.end()) continue;
      const auto& br = g.bracket_basis(k, l);
      if (br.empty()) continue;
      int sign = parity_sign(deg(j) * rs.degree_of(a));
      SparseRow row;
      for (const auto& [t, c] : it->second)
        for (const auto& [q, v] : br) {
          auto& e = row[out.index_of.at({t, q})];
          e += sign * c * v;
        }
      std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
      if (!row.empty()) table[{i, j}] = row;
    }
  out.lie = DgLieAlgebra(CochainComplex(space, degree_blocks(space, space, d, 1)), table);
  return out;
}

Vec Convolution::element(const SparseMatrix& tau) const {
  Vec out = zero_vec(lie.dim());
  for (int k = 0; k < tau.rows(); ++k)
    for (const auto& [r, c] : tau.row(k)) out[index_of.at({r, k})] = c;
  return out;
}

SparseMatrix Convolution::matrix(const Vec& f) const {
  SparseMatrix out(target.dim(), reduced.complex.space().total_dim());
  for (int i = 0; i < static_cast<int>(f.size()); ++i)
    if (f[i] != 0) out.set(pair_of[i].second, pair_of[i].first, f[i]);
  return out;
}

Vec twisting_residual(const Convolution& c, const SparseMatrix& tau) {
  Vec t = c.element(tau);
  for (int i = 0; i < c.lie.dim(); ++i)
    if (t[i] != 0 && c.lie.degree(i) != 1) throw ValidationError("twisting cochain must have degree 1");
  Vec r = c.lie.d(t);
  axpy(r, Rational(1, 2), c.lie.bracket(t, t));
  return r;
}

bool is_twisting(const Convolution& c, const SparseMatrix& tau) { return is_zero(twisting_residual(c, tau)); }

SparseMatrix artinian_hom_iso(const ArtinianDgAlgebra& a, const DgLieAlgebra& mg, const Convolution& c) {
  // mg = tensor_cdga_lie(m, g) with labels "a*x"; X̄ labels are a + "'".
  const auto& rs = c.reduced.complex.space();
  SparseMatrix out(c.lie.dim(), mg.dim());
  const auto& ideal = a.algebra().space();
  for (int ai : a.m_indices()) {
    const std::string& al = ideal.label_of(ai);
    auto rf = rs.find(al + "'");
    if (!rf) throw ValidationError("artinian_hom_iso: coalgebra is not the dual of the algebra");
    int r = rs.offset(rf->first) + rf->second;
    int da = ideal.degree_of(ai);
    for (int k = 0; k < c.target.dim(); ++k) {
      int dx = c.target.degree(k);
      int q = ((da % 4) + 4) % 4;
      int sign = koszul(da, dx) * ((q == 1 || q == 2) ? -1 : 1);
      out.set(c.index_of.at({r, k}), mg.index(al + "*" + c.target.label(k)), sign);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adjunction

namespace {

// Iterated reduced coproduct Δ̄^{n-1}(x̄_r) as words in reduced indices.
std::vector<Poly> iterated_reduced(const ReducedCoalgebra& r, int start, int max_len) {
  std::vector<Poly> out{Poly{{{start}, Rational(1)}}};
  while (static_cast<int>(out.size()) < max_len) {
    Poly next;
    for (const auto& [w, c] : out.back())
      for (const auto& [ab, e] : r.delta_bar[w.back()]) {
        auto v = w;
        v.back() = ab.first;
        v.push_back(ab.second);
        add_term(next, v, c * e);
      }
    if (next.empty()) break;
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

SparseMatrix coalgebra_map_from_twisting(const UnitalCoalgebra& x, const ChevalleyCoalgebra& c,
                                         const SparseMatrix& tau) {
  const auto red = reduced(x);
  const int m = red.complex.space().total_dim();
  const DgLieAlgebra& g = c.lie;
  if (tau.rows() != g.dim() || tau.cols() != m) throw ValidationError("twisting cochain has wrong shape");
  auto parity = [&](int k) { return (g.degree(k) - 1) & 1; };
  SparseMatrix f(c.dim(), x.dim());
  const int unit = c.index_of.at({});
  std::vector<Vec> cols(m);
  for (int r = 0; r < m; ++r) {
    Poly image;
    auto layers = iterated_reduced(red, r, c.bound + 2);
    for (std::size_t li = 0; li < layers.size(); ++li) {
      const int len = static_cast<int>(li) + 1;
      Poly term;
      for (const auto& [w, coef] : layers[li]) {
        // Expand (sτ)^{⊗len} and multiply in S(g[1]).
        std::vector<std::pair<std::vector<int>, Rational>> partial{{{}, coef}};
        for (int a : w) {
          std::vector<std::pair<std::vector<int>, Rational>> next;
          for (const auto& [v, cv] : partial)
            for (int k = 0; k < g.dim(); ++k) {
              Rational t = tau.get(k, a);
              if (t == 0) continue;
              auto v2 = v;
              v2.push_back(k);
              next.push_back({v2, cv * t});
            }
          partial = std::move(next);
        }
        for (auto& [v, cv] : partial) {
          int s = sort_signed(v, parity);
          if (s) add_term(term, v, cv * s);
        }
      }
      if (term.empty()) continue;
      if (len > c.bound)
        throw ValidationError("symmetric bound " + std::to_string(c.bound) + " is insufficient: needs " +
                              std::to_string(len));
      Rational inv = 1 / factorial(len);
      for (const auto& [v, cv] : term) add_term(image, v, cv * inv);
    }
    Vec col = zero_vec(c.dim());
    for (const auto& [v, cv] : image) col[c.index_of.at(v)] = cv;
    cols[r] = col;
  }
  for (int j = 0; j < x.dim(); ++j) {
    Rational e = x.counit()[j];
    if (e != 0) f.set(unit, j, e);
  }
  for (int r = 0; r < m; ++r) {
    int j = red.source_index[r];
    for (int i = 0; i < c.dim(); ++i)
      if (cols[r][i] != 0) f.add_to(i, j, cols[r][i]);
  }
  return f;
}

SparseMatrix twisting_from_coalgebra_map(const UnitalCoalgebra& x, const ChevalleyCoalgebra& c,
                                         const SparseMatrix& f) {
  const auto red = reduced(x);
  const int m = red.complex.space().total_dim();
  SparseMatrix tau(c.lie.dim(), m);
  for (int r = 0; r < m; ++r) {
    int j = red.source_index[r];
    for (int k = 0; k < c.lie.dim(); ++k) {
      // F(x̄) = F(e_j) − ε_j·1 has the same S¹ part as F(e_j).
      Rational v = f.get(c.linear(k), j);
      if (v != 0) tau.set(k, r, v);
    }
  }
  return tau;
}

SparseMatrix lie_map_from_twisting(const CobarLie& l, const DgLieAlgebra& g, const SparseMatrix& tau) {
  const int m = l.reduced.complex.space().total_dim();
  if (tau.rows() != g.dim() || tau.cols() != m) throw ValidationError("twisting cochain has wrong shape");
  std::vector<Vec> images;
  for (int r = 0; r < m; ++r) images.push_back(tau.column(r));
  return l.free.extend_morphism(g, images);
}

SparseMatrix twisting_from_lie_map(const CobarLie& l, const DgLieAlgebra& g, const SparseMatrix& f) {
  const int m = l.reduced.complex.space().total_dim();
  SparseMatrix tau(g.dim(), m);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k < g.dim(); ++k) {
      Rational v = f.get(k, l.generator(r));
      if (v != 0) tau.set(k, r, v);
    }
  return tau;
}

AdjunctionImages adjunction_transport(const UnitalCoalgebra& x, const ChevalleyCoalgebra& c, const CobarLie& l,
                                      const SparseMatrix& tau) {
  int len = filtration_length(x);
  if (len < 0) throw ValidationError("coalgebra is not unital");
  if (l.bound < len)
    throw ValidationError("weight bound " + std::to_string(l.bound) + " is below the filtration length " +
                          std::to_string(len));
  return {coalgebra_map_from_twisting(x, c, tau), lie_map_from_twisting(l, c.lie, tau)};
}

Certificate verify_truncated_lie_map(const FreeLieTruncated& l, const DgLieAlgebra& target, const SparseMatrix& f) {
  auto fail = [](std::string msg) { return Certificate{false, std::move(msg)}; };
  const auto& g = l.lie;
  const int n = g.dim();
  if (f.rows() != target.dim() || f.cols() != n) return fail("map has wrong shape");
  for (int i = 0; i < n; ++i) {
    Vec fi = f.column(i);
    for (int k = 0; k < target.dim(); ++k)
      if (fi[k] != 0 && target.degree(k) != g.degree(i)) return fail("map is not degree 0 on " + g.label(i));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (l.weight[i] + l.weight[j] > l.max_weight) continue;
      Vec lhs = f.apply(g.bracket(unit_vec(n, i), unit_vec(n, j)));
      Vec rhs = target.bracket(f.column(i), f.column(j));
      if (lhs != rhs) return fail("bracket not preserved on [" + g.label(i) + ", " + g.label(j) + "]");
    }
  // How far d raises weight on generators.
  int raise = 0;
  SparseMatrix d = g.total_differential();
  for (int i = 0; i < n; ++i) {
    if (l.weight[i] != 1) continue;
    for (int k = 0; k < n; ++k)
      if (d.get(k, i) != 0) raise = std::max(raise, l.weight[k] - 1);
  }
  for (int i = 0; i < n; ++i) {
    if (l.weight[i] + raise > l.max_weight) continue;
    if (f.apply(g.d(unit_vec(n, i))) != target.d(f.column(i))) return fail("map does not commute with d on " + g.label(i));
  }
  return {};
}

SparseMatrix unit_map(const CobarLie& l, const ChevalleyCoalgebra& cl) {
  const int m = l.reduced.complex.space().total_dim();
  SparseMatrix tau(l.lie().dim(), m);
  for (int r = 0; r < m; ++r) tau.set(l.generator(r), r, 1);
  return coalgebra_map_from_twisting(l.source, cl, tau);
}

SparseMatrix unit_splitting(const CobarLie& l, const ChevalleyCoalgebra& cl) {
  const auto& x = l.source;
  SparseMatrix q(x.dim(), cl.dim());
  q.set(x.unit(), cl.index_of.at({}), 1);
  const int m = l.reduced.complex.space().total_dim();
  for (int r = 0; r < m; ++r) {
    // x̄_r = e_j − ε_j·1
    int j = l.reduced.source_index[r];
    int col = cl.linear(l.generator(r));
    q.set(j, col, 1);
    Rational e = x.counit()[j];
    if (e != 0) q.add_to(x.unit(), col, -e);
  }
  return q;
}

SparseMatrix counit_map(const ChevalleyCoalgebra& c, const CobarLie& lc) {
  const DgLieAlgebra& g = c.lie;
  const int m = lc.reduced.complex.space().total_dim();
  SparseMatrix tau(g.dim(), m);
  for (int k = 0; k < g.dim(); ++k) {
    int j = c.linear(k);
    auto it = std::find(lc.reduced.source_index.begin(), lc.reduced.source_index.end(), j);
    tau.set(k, static_cast<int>(it - lc.reduced.source_index.begin()), 1);
  }
  return lie_map_from_twisting(lc, g, tau);
}

SparseMatrix cobar_map(const CobarLie& lx, const CobarLie& ly, const SparseMatrix& f) {
  const int m = lx.reduced.complex.space().total_dim();
  const int n = ly.lie().dim();
  const auto& y = ly.source;
  std::vector<int> red_of(y.dim(), -1);
  for (int r = 0; r < static_cast<int>(ly.reduced.source_index.size()); ++r) red_of[ly.reduced.source_index[r]] = r;
  std::vector<Vec> images;
  for (int r = 0; r < m; ++r) {
    // f(x̄) lies in Ȳ; its coordinates on non-unit basis vectors are its Ȳ coordinates.
    Vec fx = f.column(lx.reduced.source_index[r]);
    Vec img = zero_vec(n);
    for (int j = 0; j < y.dim(); ++j)
      if (fx[j] != 0 && j != y.unit()) img[ly.generator(red_of[j])] += fx[j];
    images.push_back(img);
  }
  return lx.free.extend_morphism(ly.lie(), images);
}

// ---------------------------------------------------------------------------
// Homology via abelianization

std::optional<Window> chevalley_valid_window(const DgLieAlgebra& g, int bound) {
  ChevalleyCoalgebra c = chevalley_C(g, bound);
  CochainComplex red = chevalley_reduced(c);
  auto degs = red.space().degrees();
  Window full{degs.empty() ? 0 : degs.front() - 1, degs.empty() ? 0 : degs.back() + 1};
  std::vector<std::pair<int, bool>> v;  // (degree in g[1], odd)
  for (int k = 0; k < g.dim(); ++k) v.push_back({g.degree(k) - 1, ((g.degree(k) - 1) & 1) != 0});
  if (v.empty()) return full;
  bool neg = std::all_of(v.begin(), v.end(), [](auto p) { return p.first < 0; });
  bool pos = std::all_of(v.begin(), v.end(), [](auto p) { return p.first > 0; });
  if (!neg && !pos) {
    // Only odd letters can make S^{N+1} vanish.
    int odd = 0;
    for (auto [d, o] : v) {
      if (!o) return std::nullopt;
      ++odd;
    }
    if (odd <= bound) return full;
    return std::nullopt;
  }
  // Extreme degree of S^{N+1}: greedy choice, odd letters at most once.
  std::sort(v.begin(), v.end(), [&](auto a, auto b) { return neg ? a.first > b.first : a.first < b.first; });
  int need = bound + 1, total = 0;
  for (auto [d, o] : v) {
    if (!o) {
      total += need * d;
      need = 0;
      break;
    }
    total += d;
    if (--need == 0) break;
  }
  if (need > 0) return full;  // S^{N+1} = 0
  // Past S^{N+1}, degrees only move further away.
  return neg ? Window{total + 2, full.hi} : Window{full.lo, total - 2};
}

std::map<int, int> homology_C_bar(const DgLieAlgebra& g, int bound, Window window) {
  auto valid = chevalley_valid_window(g, bound);
  if (!valid) throw ValidationError("no degree is unaffected by the symmetric bound " + std::to_string(bound));
  if (window.lo < valid->lo || window.hi > valid->hi)
    throw ValidationError("window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                          "] exceeds the valid window [" + std::to_string(valid->lo) + ", " +
                          std::to_string(valid->hi) + "] at bound " + std::to_string(bound));
  CochainComplex red = chevalley_reduced(chevalley_C(g, bound));
  std::map<int, int> out;
  for (int t = window.lo; t <= window.hi; ++t) out[t] = cohomology_at(red, t).dim;
  return out;
}

CochainComplex chevalley_weight_truncated(const FreeLieTruncated& l) {
  ChevalleyCoalgebra c = build_chevalley(l.lie, l.max_weight, &l.weight, l.max_weight);
  return chevalley_reduced(c);
}

std::map<int, int> homology_C_bar(const FreeLieTruncated& l) {
  CochainComplex red = chevalley_weight_truncated(l);
  std::map<int, int> out;
  for (int t : red.space().degrees()) out[t] = cohomology_at(red, t).dim;
  return out;
}

CochainComplex abelianization(const DgLieAlgebra& g) {
  const int n = g.dim();
  std::vector<Vec> brackets;
  for (const auto& [ij, row] : g.table()) {
    Vec v = zero_vec(n);
    for (const auto& [k, c] : row) v[k] = c;
    brackets.push_back(v);
  }
  std::vector<Vec> b = brackets.empty() ? std::vector<Vec>{} : column_space_basis(SparseMatrix::from_columns(n, brackets));
  std::vector<Vec> units;
  for (int i = 0; i < n; ++i) units.push_back(unit_vec(n, i));
  std::vector<Vec> comp = extend_basis(b, units);
  std::vector<Vec> all = b;
  all.insert(all.end(), comp.begin(), comp.end());
  auto inv = inverse(SparseMatrix::from_columns(n, all));
  std::map<int, std::vector<std::string>> comps;
  std::vector<int> idx;
  for (const auto& v : comp) {
    int i = unit_index(v);
    idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int c) { return std::pair{g.degree(a), a} < std::pair{g.degree(c), c}; });
  for (int i : idx) comps[g.degree(i)].push_back(g.label(i));
  GradedSpace space(comps);
  const int m = static_cast<int>(idx.size());
  const int nb = static_cast<int>(b.size());
  std::map<int, int> pos_in_all;  // unit index -> column in `all`
  for (int j = 0; j < m; ++j) pos_in_all[unit_index(comp[j])] = nb + j;
  SparseMatrix d(m, m);
  for (int j = 0; j < m; ++j) {
    Vec coords = inv->apply(g.d(unit_vec(n, idx[j])));
    for (int r = 0; r < m; ++r) {
      Rational c = coords[pos_in_all[idx[r]]];
      if (c != 0) d.set(r, j, c);
    }
  }
  return CochainComplex(space, degree_blocks(space, space, d, 1));
}

CochainComplex abelianization(const FreeLieTruncated& l) {
  const GradedSpace& gens = l.generators;
  const int m = gens.total_dim();
  SparseMatrix d(m, m);
  for (int j = 0; j < m; ++j) {
    Vec dj = l.lie.d(unit_vec(l.lie.dim(), l.generator_index(j)));
    for (int r = 0; r < m; ++r) {
      Rational c = dj[l.generator_index(r)];
      if (c != 0) d.set(r, j, c);
    }
  }
  return CochainComplex(gens, degree_blocks(gens, gens, d, 1));
}

Sl2Counterexample sl2_example(int max_weight) {
  if (max_weight < 2) throw ValidationError("the sl2 presentation needs weight >= 2");
  GradedSpace gens({{-1, {"x", "y", "z"}}, {0, {"e", "f", "h"}}});
  FreeLieTruncated f = free_lie(gens, max_weight);
  const int n = f.lie.dim();
  auto gen = [&](int g) { return unit_vec(n, f.generator_index(g)); };
  Vec x = gen(0), y = gen(1), z = gen(2), e = gen(3), ff = gen(4), h = gen(5);
  auto br = [&](const Vec& a, const Vec& b) { return f.lie.bracket(a, b); };
  std::vector<Vec> images{sub(br(h, e), scale(2, e)), add(br(h, ff), scale(2, ff)), sub(br(e, ff), h),
                          zero_vec(n), zero_vec(n), zero_vec(n)};
  Sl2Counterexample out;
  out.presentation = f.with_differential(images);
  out.sl2 = catalog::sl2();
  std::vector<Vec> targets{zero_vec(3), zero_vec(3), zero_vec(3), out.sl2.basis("e"), out.sl2.basis("f"),
                           out.sl2.basis("h")};
  out.surjection = out.presentation.extend_morphism(out.sl2, targets);
  return out;
}

}  // namespace dgl
