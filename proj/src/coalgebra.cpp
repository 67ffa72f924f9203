#include "dgl/coalgebra.hpp"

#include <algorithm>
#include <sstream>

namespace dgl {

namespace {

using TensorN = std::map<std::vector<int>, Rational>;

void add_term(Tensor2& t, int a, int b, const Rational& c) {
  if (c == 0) return;
  auto& v = t[{a, b}];
  v += c;
  if (v == 0) t.erase({a, b});
}

void add_term(TensorN& t, const std::vector<int>& w, const Rational& c) {
  if (c == 0) return;
  auto& v = t[w];
  v += c;
  if (v == 0) t.erase(w);
}

std::string show(const Tensor2& t, const GradedSpace& s) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [ab, c] : t) {
    if (!first) out << " + ";
    first = false;
    out << to_string(c) << "*" << s.label_of(ab.first) << "(x)" << s.label_of(ab.second);
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace

UnitalCoalgebra::UnitalCoalgebra(CochainComplex complex, std::vector<Tensor2> delta, Vec counit,
                                 std::string unit_label)
    : complex_(std::move(complex)), delta_(std::move(delta)), counit_(std::move(counit)),
      unit_label_(std::move(unit_label)) {
  const int n = dim();
  if (static_cast<int>(delta_.size()) != n) throw ValidationError("coproduct table has wrong size");
  if (static_cast<int>(counit_.size()) != n) throw ValidationError("counit has wrong size");
  for (const auto& t : delta_)
    for (const auto& [ab, c] : t)
      if (ab.first < 0 || ab.first >= n || ab.second < 0 || ab.second >= n)
        throw ValidationError("coproduct index out of range");
  unit_ = index(unit_label_);
  total_d_ = complex_.total_differential();
}

UnitalCoalgebra UnitalCoalgebra::ground() {
  auto c = CochainComplex::zero_differential(GradedSpace::single(0, {"1"}));
  return UnitalCoalgebra(c, {Tensor2{{{0, 0}, Rational(1)}}}, Vec{Rational(1)}, "1");
}

int UnitalCoalgebra::index(const std::string& label) const {
  auto f = space().find(label);
  if (!f) throw ValidationError("unknown basis label '" + label + "'");
  return space().offset(f->first) + f->second;
}

Tensor2 UnitalCoalgebra::coproduct(const Vec& x) const {
  Tensor2 out;
  for (int i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (const auto& [ab, c] : delta_[i]) add_term(out, ab.first, ab.second, x[i] * c);
  }
  return out;
}

Certificate verify_coalgebra(const UnitalCoalgebra& x) {
  const int n = x.dim();
  const auto& s = x.space();
  const auto& dm = x.total_differential();
  auto fail = [](std::string msg) { return Certificate{false, std::move(msg)}; };

  for (int i = 0; i < n; ++i) {
    for (const auto& [ab, c] : x.delta(i))
      if (x.degree(ab.first) + x.degree(ab.second) != x.degree(i))
        return fail("coproduct of " + s.label_of(i) + " is not homogeneous");
    if (x.counit()[i] != 0 && x.degree(i) != 0)
      return fail("counit is nonzero on " + s.label_of(i) + " of degree " + std::to_string(x.degree(i)));
  }

  for (int i = 0; i < n; ++i) {
    const std::string& li = s.label_of(i);
    // coassociativity
    TensorN left, right;
    for (const auto& [ab, c] : x.delta(i)) {
      for (const auto& [pq, e] : x.delta(ab.first)) add_term(left, {pq.first, pq.second, ab.second}, c * e);
      for (const auto& [pq, e] : x.delta(ab.second)) add_term(right, {ab.first, pq.first, pq.second}, c * e);
    }
    if (left != right) return fail("coassociativity fails on " + li);
    // cocommutativity
    Tensor2 swapped;
    for (const auto& [ab, c] : x.delta(i))
      add_term(swapped, ab.second, ab.first, c * koszul(x.degree(ab.first), x.degree(ab.second)));
    if (swapped != x.delta(i)) return fail("cocommutativity fails on " + li + ": " + show(x.delta(i), s));
    // counit
    Vec l = zero_vec(n), r = zero_vec(n);
    for (const auto& [ab, c] : x.delta(i)) {
      l[ab.second] += x.counit()[ab.first] * c;
      r[ab.first] += x.counit()[ab.second] * c;
    }
    Vec e = unit_vec(n, i);
    if (l != e || r != e) return fail("counit axiom fails on " + li);
    // coderivation
    Vec dv = dm.apply(e);
    Tensor2 lhs = x.coproduct(dv), rhs;
    for (const auto& [ab, c] : x.delta(i)) {
      Vec da = dm.apply(unit_vec(n, ab.first));
      Vec db = dm.apply(unit_vec(n, ab.second));
      for (int k = 0; k < n; ++k) {
        if (da[k] != 0) add_term(rhs, k, ab.second, c * da[k]);
        if (db[k] != 0) add_term(rhs, ab.first, k, c * db[k] * parity_sign(x.degree(ab.first)));
      }
    }
    if (lhs != rhs) return fail("d is not a coderivation on " + li);
    Rational ed = 0;
    for (int k = 0; k < n; ++k) ed += x.counit()[k] * dv[k];
    if (ed != 0) return fail("counit does not vanish on d(" + li + ")");
  }

  const int u = x.unit();
  if (x.delta(u) != Tensor2{{{u, u}, Rational(1)}}) return fail("unit is not group-like");
  if (x.counit()[u] != 1) return fail("counit of the unit is not 1");
  if (!is_zero(dm.apply(unit_vec(n, u)))) return fail("unit is not a cocycle");
  return {};
}

Certificate verify_coalgebra_map(const UnitalCoalgebra& x, const UnitalCoalgebra& y, const SparseMatrix& f) {
  auto fail = [](std::string msg) { return Certificate{false, std::move(msg)}; };
  if (f.rows() != y.dim() || f.cols() != x.dim()) return fail("map has wrong shape");
  for (int i = 0; i < x.dim(); ++i) {
    const std::string& li = x.space().label_of(i);
    Vec fi = f.column(i);
    for (int k = 0; k < y.dim(); ++k)
      if (fi[k] != 0 && y.degree(k) != x.degree(i)) return fail("map is not degree 0 on " + li);
    Tensor2 lhs = y.coproduct(fi), rhs;
    for (const auto& [ab, c] : x.delta(i)) {
      Vec fa = f.column(ab.first), fb = f.column(ab.second);
      for (int p = 0; p < y.dim(); ++p) {
        if (fa[p] == 0) continue;
        for (int q = 0; q < y.dim(); ++q)
          if (fb[q] != 0) add_term(rhs, p, q, c * fa[p] * fb[q]);
      }
    }
    if (lhs != rhs) return fail("map does not commute with coproducts on " + li);
    Rational e = 0;
    for (int k = 0; k < y.dim(); ++k) e += y.counit()[k] * fi[k];
    if (e != x.counit()[i]) return fail("map does not preserve the counit on " + li);
    if (f.apply(x.d(unit_vec(x.dim(), i))) != y.d(fi)) return fail("map does not commute with d on " + li);
  }
  if (f.column(x.unit()) != unit_vec(y.dim(), y.unit())) return fail("map does not preserve the unit");
  return {};
}

std::vector<Vec> canonical_level(const UnitalCoalgebra& x, int n) {
  const int dim = x.dim();
  const int u = x.unit();
  // Rows of the map X -> X̄^{⊗n+1}; factors other than the last are
  // projected as soon as they are final.
  std::map<std::vector<int>, int> row_of;
  std::vector<std::pair<std::pair<int, int>, Rational>> entries;
  for (int i = 0; i < dim; ++i) {
    TensorN cur{{{i}, Rational(1)}};
    for (int step = 0; step < n; ++step) {
      TensorN next;
      for (const auto& [w, c] : cur) {
        for (const auto& [ab, e] : x.delta(w.back())) {
          if (ab.first == u) continue;
          auto v = w;
          v.back() = ab.first;
          v.push_back(ab.second);
          add_term(next, v, c * e);
        }
      }
      cur = std::move(next);
    }
    for (const auto& [w, c] : cur) {
      if (w.back() == u) continue;
      auto it = row_of.emplace(w, static_cast<int>(row_of.size())).first;
      entries.push_back({{it->second, i}, c});
    }
  }
  SparseMatrix m(static_cast<int>(row_of.size()), dim);
  for (const auto& [rc, c] : entries) m.add_to(rc.first, rc.second, c);
  return kernel_basis(m);
}

std::vector<int> canonical_dims(const UnitalCoalgebra& x, int max_n) {
  std::vector<int> out;
  for (int n = 0; n <= max_n; ++n) out.push_back(static_cast<int>(canonical_level(x, n).size()));
  return out;
}

int filtration_length(const UnitalCoalgebra& x) {
  int prev = -1;
  for (int n = 0;; ++n) {
    int d = static_cast<int>(canonical_level(x, n).size());
    if (d == x.dim()) return n;
    if (d == prev) return -1;  // X_{n+1} depends only on X_n
    prev = d;
  }
}

bool is_unital(const UnitalCoalgebra& x) { return filtration_length(x) >= 0; }

FilteredComplex canonical_filtered(const UnitalCoalgebra& x) {
  const int len = filtration_length(x);
  if (len < 0) throw ValidationError("coalgebra is not unital: canonical filtration does not exhaust");
  std::vector<int> weight(x.dim(), -1);
  for (int n = 0; n <= len; ++n) {
    auto level = canonical_level(x, n);
    int count = 0;
    for (int i = 0; i < x.dim(); ++i) {
      if (in_span(level, unit_vec(x.dim(), i))) {
        if (weight[i] < 0) weight[i] = n;
        ++count;
      }
    }
    if (count != static_cast<int>(level.size()))
      throw ValidationError("basis is not adapted to the canonical filtration at level " + std::to_string(n));
  }
  std::map<int, std::vector<int>> w;
  for (int i = 0; i < x.dim(); ++i) w[x.degree(i)].push_back(weight[i]);
  return FilteredComplex(x.complex(), w, 0);
}

ReducedCoalgebra reduced(const UnitalCoalgebra& x) {
  const int u = x.unit();
  ReducedCoalgebra out;
  std::vector<int> red_of(x.dim(), -1);
  std::map<int, std::vector<std::string>> comps;
  for (int i = 0; i < x.dim(); ++i) {
    if (i == u) continue;
    comps[x.degree(i)].push_back(x.space().label_of(i));
  }
  GradedSpace space(comps);
  // Global order of X̄ is X's order with the unit removed.
  for (int i = 0, k = 0; i < x.dim(); ++i) {
    if (i == u) continue;
    red_of[i] = k++;
    out.source_index.push_back(i);
  }
  const int m = static_cast<int>(out.source_index.size());
  SparseMatrix dt(m, m);
  const auto& dx = x.total_differential();
  for (int k = 0; k < m; ++k) {
    Vec di = dx.column(out.source_index[k]);
    for (int r = 0; r < x.dim(); ++r)
      if (di[r] != 0 && r != u) dt.set(red_of[r], k, di[r]);
  }
  auto blocks = degree_blocks(space, space, dt, 1);
  out.complex = CochainComplex(space, blocks);
  for (int k = 0; k < m; ++k) {
    Tensor2 t;
    for (const auto& [ab, c] : x.delta(out.source_index[k]))
      if (ab.first != u && ab.second != u) add_term(t, red_of[ab.first], red_of[ab.second], c);
    out.delta_bar.push_back(std::move(t));
  }
  return out;
}

ArtinianDgAlgebra::ArtinianDgAlgebra(Cdga algebra, std::string unit_label) : algebra_(std::move(algebra)) {
  const int n = algebra_.dim();
  unit_ = algebra_.index(unit_label);
  for (int i = 0; i < n; ++i) {
    if (algebra_.degree(i) > 0)
      throw ValidationError("artinian algebra has a basis vector in positive degree " +
                            std::to_string(algebra_.degree(i)));
    if (i != unit_) m_.push_back(i);
  }
  const auto& s = algebra_.space();
  for (int i = 0; i < n; ++i) {
    SparseRow expect{{i, Rational(1)}};
    if (algebra_.product_basis(unit_, i) != expect) throw ValidationError(unit_label + " is not a unit on " + s.label_of(i));
  }
  if (!is_zero(algebra_.d(unit_vec(n, unit_)))) throw ValidationError("d(1) != 0");
  for (int i : m_) {
    for (int j : m_) {
      const auto& p = algebra_.product_basis(i, j);
      auto it = p.find(unit_);
      if (it != p.end() && it->second != 0)
        throw ValidationError("augmentation ideal is not closed: " + s.label_of(i) + "·" + s.label_of(j));
    }
    if (algebra_.d(unit_vec(n, i))[unit_] != 0) throw ValidationError("d leaves the augmentation ideal on " + s.label_of(i));
  }
  order_ = 0;
  for (int k = 1;; ++k) {
    if (ideal_power(k + 1).empty()) {
      order_ = k;
      break;
    }
    if (k > n) throw ValidationError("augmentation ideal is not nilpotent");
  }
  if (m_.empty()) order_ = 0;
}

std::vector<Vec> ArtinianDgAlgebra::ideal_power(int k) const {
  const int n = algebra_.dim();
  std::vector<Vec> m;
  for (int i : m_) m.push_back(unit_vec(n, i));
  std::vector<Vec> cur = m;
  for (int p = 1; p < k; ++p) {
    std::vector<Vec> gens;
    for (const auto& a : cur)
      for (const auto& b : m) gens.push_back(algebra_.multiply(a, b));
    cur = column_space_basis(SparseMatrix::from_columns(n, gens));
    if (cur.empty()) break;
  }
  return cur;
}

Cdga ArtinianDgAlgebra::maximal_ideal() const {
  std::map<int, std::vector<std::string>> comps;
  std::vector<int> red(algebra_.dim(), -1);
  for (int i : m_) comps[algebra_.degree(i)].push_back(algebra_.space().label_of(i));
  for (int k = 0; k < static_cast<int>(m_.size()); ++k) red[m_[k]] = k;
  GradedSpace space(comps);
  const int m = static_cast<int>(m_.size());
  SparseMatrix dt(m, m);
  for (int k = 0; k < m; ++k) {
    Vec di = algebra_.d(unit_vec(algebra_.dim(), m_[k]));
    for (int r = 0; r < algebra_.dim(); ++r)
      if (di[r] != 0) dt.set(red[r], k, di[r]);
  }
  auto blocks = degree_blocks(space, space, dt, 1);
  ProductTable prod;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      SparseRow r;
      for (const auto& [k, c] : algebra_.product_basis(m_[a], m_[b])) r[red[k]] = c;
      if (!r.empty()) prod[{a, b}] = r;
    }
  return Cdga(CochainComplex(space, blocks), prod);
}

namespace {
std::vector<int> dual_positions(const GradedSpace& s) {
  std::vector<int> to_x(s.total_dim());
  std::map<int, int> offsets;
  int acc = 0;
  auto ds = s.degrees();
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
    offsets[*it] = acc;
    acc += s.dim(*it);
  }
  for (int i = 0; i < s.total_dim(); ++i) to_x[i] = offsets[s.degree_of(i)] + (i - s.offset(s.degree_of(i)));
  return to_x;
}
}  // namespace

UnitalCoalgebra dual_artinian(const ArtinianDgAlgebra& a) {
  const Cdga& alg = a.algebra();
  const auto& s = alg.space();
  const int n = alg.dim();
  std::map<int, std::vector<std::string>> comps;
  for (int d : s.degrees()) {
    auto& out = comps[-d];
    for (const auto& l : s.labels(d)) out.push_back(l + "'");
  }
  const std::string unit_label = s.label_of(a.unit());
  std::string& ul = comps[0][s.find(unit_label)->second];
  ul = "1";
  GradedSpace space(comps);
  // A index -> X index
  auto to_x = dual_positions(s);
  SparseMatrix dx(n, n);
  SparseMatrix da = alg.complex().total_differential();
  for (int r = 0; r < n; ++r)
    for (const auto& [c, v] : da.row(r)) dx.set(to_x[c], to_x[r], v);
  auto blocks = degree_blocks(space, space, dx, 1);
  std::vector<Tensor2> delta(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : alg.product_basis(i, j)) add_term(delta[to_x[k]], to_x[i], to_x[j], c);
  Vec counit = unit_vec(n, to_x[a.unit()]);
  return UnitalCoalgebra(CochainComplex(space, blocks), delta, counit, "1");
}


SparseMatrix dual_map(const ArtinianDgAlgebra& a, const ArtinianDgAlgebra& b, const SparseMatrix& f) {
  auto xa = dual_positions(a.algebra().space());
  auto xb = dual_positions(b.algebra().space());
  SparseMatrix out(a.dim(), b.dim());
  for (int r = 0; r < f.rows(); ++r)
    for (const auto& [c, v] : f.row(r)) out.set(xa[c], xb[r], v);
  return out;
}

}  // namespace dgl
