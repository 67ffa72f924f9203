#include "dgl/catalog.hpp"

namespace dgl::catalog {

namespace {

BracketTable table_from(const GradedSpace& sp, std::initializer_list<std::tuple<const char*, const char*, std::vector<std::pair<const char*, long>>>> rows) {
  auto idx = [&](const char* l) {
    auto f = sp.find(l);
    if (!f) throw std::logic_error(std::string("catalog label ") + l);
    return sp.offset(f->first) + f->second;
  };
  BracketTable t;
  for (const auto& [a, b, terms] : rows) {
    SparseRow r;
    for (const auto& [l, v] : terms) r[idx(l)] = v;
    t[{idx(a), idx(b)}] = r;
  }
  return t;
}

}  // namespace

DgLieAlgebra sl2() {
  GradedSpace sp = GradedSpace::single(0, {"e", "f", "h"});
  return DgLieAlgebra(CochainComplex::zero_differential(sp),
                      table_from(sp, {{"h", "e", {{"e", 2}}}, {"h", "f", {{"f", -2}}}, {"e", "f", {{"h", 1}}}}));
}

DgLieAlgebra heisenberg() {
  GradedSpace sp = GradedSpace::single(0, {"a", "b", "c"});
  return DgLieAlgebra(CochainComplex::zero_differential(sp), table_from(sp, {{"a", "b", {{"c", 1}}}}));
}

DgLieAlgebra ac_algebra() {
  GradedSpace sp({{1, {"a"}}, {2, {"c"}}});
  CochainComplex c(sp, {{1, SparseMatrix::identity(1)}});
  return DgLieAlgebra(c, table_from(sp, {{"a", "a", {{"c", 1}}}}));
}

DgLieAlgebra upper_triangular4() {
  GradedSpace sp = GradedSpace::single(0, {"e12", "e23", "e34", "e13", "e24", "e14"});
  return DgLieAlgebra(CochainComplex::zero_differential(sp),
                      table_from(sp, {{"e12", "e23", {{"e13", 1}}},
                                      {"e23", "e34", {{"e24", 1}}},
                                      {"e12", "e24", {{"e14", 1}}},
                                      {"e13", "e34", {{"e14", 1}}}}));
}

DgLieAlgebra line(int degree, const std::string& label) {
  return DgLieAlgebra::abelian(CochainComplex::zero_differential(GradedSpace::single(degree, {label})));
}

DgLieAlgebra abelian(const CochainComplex& c) { return DgLieAlgebra::abelian(c); }

Cdga ground_field() {
  ProductTable p;
  p[{0, 0}] = {{0, 1}};
  return Cdga(CochainComplex::zero_differential(GradedSpace::single(0, {"1"})), p);
}

namespace {

std::string power_label(int k) { return k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k); }

Cdga truncated(int n, int degree, int first) {
  if (degree != 0 && n > 1 && (degree & 1)) throw ValidationError("odd generator squares to zero; use n <= 1");
  std::map<int, std::vector<std::string>> comps;
  for (int k = first; k <= n; ++k) comps[k * degree].push_back(power_label(k));
  GradedSpace sp(comps);
  auto idx = [&](int k) {
    auto f = sp.find(power_label(k));
    return sp.offset(f->first) + f->second;
  };
  ProductTable p;
  for (int a = first; a <= n; ++a)
    for (int b = first; a + b <= n; ++b) p[{idx(a), idx(b)}] = {{idx(a + b), 1}};
  return Cdga(CochainComplex::zero_differential(sp), p);
}

}  // namespace

Cdga truncated_polynomial(int n, int degree) { return truncated(n, degree, 0); }
Cdga truncated_polynomial_ideal(int n, int degree) { return truncated(n, degree, 1); }

Cdga koszul_truncated(int n) {
  std::map<int, std::vector<std::string>> comps;
  for (int k = 0; k <= n; ++k) {
    comps[0].push_back(power_label(k));
    comps[-1].push_back(k == 0 ? "eta" : power_label(k) + "*eta");
  }
  GradedSpace sp(comps);
  const int off = n + 1;  // degree -1 comes first
  auto x = [&](int k) { return off + k; };
  auto e = [&](int k) { return k; };
  SparseMatrix d(n + 1, n + 1);
  for (int k = 0; k < n; ++k) d.set(k + 1, k, 1);
  ProductTable p;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) {
      p[{x(a), x(b)}] = {{x(a + b), 1}};
      p[{x(a), e(b)}] = {{e(a + b), 1}};
    }
  return Cdga(CochainComplex(sp, {{-1, d}}), p);
}

Cdga split_product() {
  ProductTable p;
  p[{0, 0}] = {{0, 1}};
  p[{1, 1}] = {{1, 1}};
  return Cdga(CochainComplex::zero_differential(GradedSpace::single(0, {"p", "q"})), p);
}

DgLieAlgebra change_basis(const DgLieAlgebra& g, const SparseMatrix& p, const std::string& prefix) {
  auto inv = inverse(p);
  if (!inv) throw ValidationError("change of basis is singular");
  int n = g.dim();
  std::map<int, std::vector<std::string>> comps;
  std::vector<Vec> cols;
  for (int j = 0; j < n; ++j) {
    Vec v = p.column(j);
    int deg = g.degree(j);
    for (int i = 0; i < n; ++i)
      if (v[i] != 0 && g.degree(i) != deg) throw ValidationError("change of basis mixes degrees");
    comps[deg].push_back(prefix + std::to_string(j));
    cols.push_back(v);
  }
  GradedSpace sp(comps);
  BracketTable t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec b = inv->apply(g.bracket(cols[i], cols[j]));
      SparseRow r;
      for (int k = 0; k < n; ++k)
        if (b[k] != 0) r[k] = b[k];
      if (!r.empty()) t[{i, j}] = r;
    }
  SparseMatrix d = *inv * g.total_differential() * p;
  return DgLieAlgebra(CochainComplex(sp, degree_blocks(sp, sp, d, 1)), t);
}

}  // namespace dgl::catalog
