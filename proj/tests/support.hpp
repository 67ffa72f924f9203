#pragma once

#include "dgl/filtered.hpp"

#include <random>

namespace dgl::testing {

inline SparseMatrix random_matrix(std::mt19937& rng, int rows, int cols, int range = 2) {
  std::uniform_int_distribution<int> dist(-range, range);
  SparseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, dist(rng));
  return m;
}

/// Random filtered complex in degrees lo..hi: a direct sum of cycles and
/// acyclic pairs x -> y (weight y <= weight x), conjugated by a random
/// filtration-preserving unitriangular change of basis.
inline FilteredComplex random_filtered(std::mt19937& rng, int lo, int hi, int max_weight, const std::string& tag = "v") {
  std::uniform_int_distribution<int> coin(0, 2), wdist(0, max_weight), small(-1, 1);
  std::map<int, std::vector<std::string>> comps;
  std::map<int, std::vector<int>> weights;
  std::vector<std::tuple<int, int, int>> pairs;  // degree, source pos, target pos
  int counter = 0;
  auto add = [&](int d, int w) {
    comps[d].push_back(tag + std::to_string(counter++));
    weights[d].push_back(w);
    return static_cast<int>(comps[d].size()) - 1;
  };
  for (int d = lo; d <= hi; ++d) {
    int n = coin(rng);
    for (int i = 0; i < n; ++i) add(d, wdist(rng));
    if (d < hi && coin(rng) > 0) {
      int wx = wdist(rng);
      int x = add(d, wx);
      int y = add(d + 1, std::uniform_int_distribution<int>(0, wx)(rng));
      pairs.emplace_back(d, x, y);
    }
  }
  GradedSpace space(comps);
  std::map<int, SparseMatrix> diff;
  for (int d = lo; d < hi; ++d) diff[d] = SparseMatrix(space.dim(d + 1), space.dim(d));
  for (auto [d, x, y] : pairs) diff[d].set(y, x, 1);
  // Change of basis P with P(b) = b + Σ c·b' over weight(b') <= weight(b), b' earlier.
  std::map<int, SparseMatrix> p, pinv;
  for (int d = lo; d <= hi; ++d) {
    int n = space.dim(d);
    SparseMatrix m = SparseMatrix::identity(n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < j; ++i)
        if (weights[d][i] <= weights[d][j]) m.set(i, j, small(rng));
    p[d] = m;
    pinv[d] = *inverse(m);
  }
  std::map<int, SparseMatrix> conj;
  for (int d = lo; d < hi; ++d) conj[d] = pinv[d + 1] * diff[d] * p[d];
  return FilteredComplex(CochainComplex(space, conj), weights, 0);
}

}  // namespace dgl::testing

#include "dgl/catalog.hpp"

namespace dgl::testing {

/// Random degree-preserving unitriangular-plus-diagonal change of basis.
inline SparseMatrix random_basis_change(std::mt19937& rng, const DgLieAlgebra& g) {
  std::uniform_int_distribution<int> small(-1, 1), diag(1, 2);
  int n = g.dim();
  SparseMatrix p(n, n);
  for (int j = 0; j < n; ++j) {
    p.set(j, j, diag(rng));
    for (int i = 0; i < j; ++i)
      if (g.degree(i) == g.degree(j)) p.set(i, j, small(rng));
  }
  return p;
}

/// A small random dg Lie algebra (not necessarily nilpotent): a catalog
/// algebra, possibly tensored with a small cdga, in a random basis.
inline DgLieAlgebra random_dgla(std::mt19937& rng, int max_dim = 6) {
  std::vector<DgLieAlgebra> pool = {catalog::sl2(), catalog::heisenberg(), catalog::ac_algebra(),
                                    catalog::upper_triangular4(), catalog::line(1), catalog::line(0),
                                    catalog::line(2)};
  // abelian complexes with a differential
  {
    GradedSpace sp({{0, {"u"}}, {1, {"v", "w"}}, {2, {"z"}}});
    SparseMatrix d0(2, 1), d1(1, 2);
    d0.set(0, 0, 1);
    d1.set(0, 1, 1);
    pool.push_back(DgLieAlgebra::abelian(CochainComplex(sp, {{0, d0}, {1, d1}})));
  }
  {
    GradedSpace sp({{-1, {"p"}}, {0, {"q"}}, {1, {"r", "s"}}});
    SparseMatrix dm(1, 1);
    dm.set(0, 0, 1);
    pool.push_back(DgLieAlgebra::abelian(CochainComplex(sp, {{-1, dm}})));
  }
  for (;;) {
    DgLieAlgebra g = pool[std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()) - 1)(rng)];
    int mode = std::uniform_int_distribution<int>(0, 2)(rng);
    if (mode == 1) g = tensor_cdga_lie(catalog::truncated_polynomial(1, -1), g);
    if (mode == 2) g = tensor_cdga_lie(catalog::truncated_polynomial(1, 0), g);
    if (g.dim() > max_dim || g.dim() == 0) continue;
    return catalog::change_basis(g, random_basis_change(rng, g), "g");
  }
}

/// Random nilpotent dg Lie algebra of dimension <= max_dim.
inline DgLieAlgebra random_nilpotent(std::mt19937& rng, int max_dim = 6) {
  for (;;) {
    auto g = random_dgla(rng, max_dim);
    if (nilpotency_index(g)) return g;
  }
}

/// Random element of a subspace: integer combination of the basis vectors.
inline Vec random_combination(std::mt19937& rng, const std::vector<Vec>& basis, std::size_t n, int range = 2) {
  std::uniform_int_distribution<int> c(-range, range);
  Vec v = zero_vec(n);
  for (const auto& b : basis) axpy(v, Rational(c(rng)), b);
  return v;
}

/// exp(y)·x = e^{ad y}x − Σ (ad y)^n/(n+1)! dy in a nilpotent algebra, summed until zero.
inline Vec gauge_series(const DgLieAlgebra& h, const Vec& y, const Vec& x) {
  Vec out = x;
  Vec term = x;
  for (int n = 1; !is_zero(term); ++n) {
    term = scale(Rational(1, n), h.bracket(y, term));
    out = add(out, term);
  }
  Vec dy = h.d(y);
  term = dy;
  Rational fact = 1;
  for (int n = 0; !is_zero(term); ++n) {
    fact *= n + 1;
    axpy(out, -1 / fact, term);
    term = h.bracket(y, term);
  }
  return out;
}

/// A random Maurer-Cartan element of a nilpotent algebra: a cocycle in the last
/// nonzero lower-central term (which squares to zero), moved by a random gauge.
inline Vec random_mc(std::mt19937& rng, const DgLieAlgebra& h) {
  auto lcs = lower_central_series(h);
  const int n = h.dim();
  std::vector<Vec> last_deg1;
  for (const auto& v : lcs.back()) {
    bool deg1 = true;
    for (int i = 0; i < n; ++i)
      if (v[i] != 0 && h.degree(i) != 1) deg1 = false;
    if (deg1) last_deg1.push_back(v);
  }
  // cocycles among them
  Vec z = zero_vec(n);
  if (!last_deg1.empty()) {
    SparseMatrix dm = h.total_differential() * SparseMatrix::from_columns(n, last_deg1);
    for (const auto& k : kernel_basis(dm)) {
      Vec v = zero_vec(n);
      for (std::size_t j = 0; j < k.size(); ++j) axpy(v, k[j], last_deg1[j]);
      axpy(z, Rational(std::uniform_int_distribution<int>(-2, 2)(rng)), v);
    }
  }
  std::vector<Vec> deg0;
  for (int i : h.indices_in_degree(0)) deg0.push_back(unit_vec(n, i));
  Vec y = random_combination(rng, deg0, n, 1);
  return gauge_series(h, y, z);
}

}  // namespace dgl::testing
