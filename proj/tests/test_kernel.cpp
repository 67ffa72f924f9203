#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgl/graded.hpp"

#include <random>

using namespace dgl;

namespace {

SparseMatrix dense(std::vector<std::vector<int>> rows) {
  std::vector<Vec> r;
  for (auto& row : rows) {
    Vec v;
    for (int x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return SparseMatrix::from_dense(r);
}

// Plain dense elimination, independent of row_reduce.
int dense_rank(std::vector<Vec> a) {
  int r = 0;
  int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(a.size()); ++c) {
    int p = r;
    while (p < static_cast<int>(a.size()) && a[p][c] == 0) ++p;
    if (p == static_cast<int>(a.size())) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      Rational f = a[i][c] / a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

SparseMatrix random_matrix(std::mt19937& rng, int rows, int cols, int range = 2) {
  std::uniform_int_distribution<int> dist(-range, range);
  SparseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, dist(rng));
  return m;
}

// Random complex C^{-1} -> C^0 -> C^1 built as d = A∘B-style factorizations so d² = 0.
CochainComplex random_complex(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dimd(0, 3);
  std::map<int, std::vector<std::string>> comps;
  for (int d = lo; d <= hi; ++d) {
    int n = dimd(rng);
    for (int i = 0; i < n; ++i) comps[d].push_back("v" + std::to_string(d + 10) + "_" + std::to_string(i));
  }
  GradedSpace space(comps);
  std::map<int, SparseMatrix> diff;
  SparseMatrix prev;
  for (int d = lo; d < hi; ++d) {
    int src = space.dim(d), tgt = space.dim(d + 1);
    SparseMatrix m = random_matrix(rng, tgt, src);
    if (d > lo) {
      // project m onto maps vanishing on im(prev): m := m·P with P killing im(prev)
      auto ker = kernel_basis(prev.transpose());  // complement-defining functionals
      SparseMatrix proj(src, src);
      if (prev.cols() > 0 && rank(prev) > 0) {
        // build m' = m - m·prev·X where X solves (prev) X = id on image; simpler: compose with a map killing im(prev)
        std::vector<Vec> fns = ker;  // row functionals f with f·prev = 0
        SparseMatrix f(static_cast<int>(fns.size()), src);
        for (std::size_t i = 0; i < fns.size(); ++i)
          for (int j = 0; j < src; ++j) f.set(static_cast<int>(i), j, fns[i][j]);
        m = random_matrix(rng, tgt, f.rows()) * f;
      }
    }
    diff[d] = m;
    prev = m;
  }
  return CochainComplex(space, diff);
}

}  // namespace

TEST_CASE("kernel_basis examples") {
  auto k = kernel_basis(SparseMatrix(1, 1));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == 1);
  CHECK(kernel_basis(SparseMatrix::identity(3)).empty());
  auto k2 = kernel_basis(dense({{1, 2}, {2, 4}}));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == Vec{-2, 1});
}

TEST_CASE("solve_affine examples") {
  auto s = solve_affine(SparseMatrix::identity(3), Vec{1, Rational(2, 3), -5});
  REQUIRE(s);
  CHECK(s->particular == Vec{1, Rational(2, 3), -5});
  CHECK(s->kernel.empty());
  CHECK(!solve_affine(SparseMatrix(2, 2), Vec{1, 0}));
  auto t = solve_affine(dense({{1, 1}}), Vec{3});
  REQUIRE(t);
  CHECK(t->particular == Vec{3, 0});
  REQUIRE(t->kernel.size() == 1);
  CHECK(t->kernel[0] == Vec{-1, 1});
}

TEST_CASE("rank-nullity and solve_affine on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + trial % 5, c = 1 + (trial / 5) % 6;
    auto m = random_matrix(rng, r, c, 1);
    CHECK(rank(m) + static_cast<int>(kernel_basis(m).size()) == c);
    CHECK(rank(m) == dense_rank(m.to_dense()));
    for (const auto& v : kernel_basis(m)) CHECK(is_zero(m.apply(v)));
    Vec x(c);
    for (int i = 0; i < c; ++i) x[i] = frac(trial - i, 1 + i);
    auto b = m.apply(x);
    auto s = solve_affine(m, b);
    REQUIRE(s);
    CHECK(m.apply(s->particular) == b);
  }
}

TEST_CASE("cohomology examples") {
  CochainComplex zero;
  CHECK(cohomology_at(zero, 0).dim == 0);

  GradedSpace s({{0, {"u"}}, {1, {"v"}}});
  CochainComplex id(s, {{0, SparseMatrix::identity(1)}});
  CHECK(cohomology_at(id, 0).dim == 0);
  CHECK(cohomology_at(id, 1).dim == 0);

  GradedSpace ab({{0, {"e", "f", "h"}}, {-1, {"x", "y", "z"}}});
  SparseMatrix d(3, 3);
  d.set(0, 0, -2);
  d.set(1, 1, 2);
  d.set(2, 2, -1);
  CochainComplex c(ab, {{-1, d}});
  CHECK(cohomology_at(c, -1).dim == 0);
  CHECK(cohomology_at(c, 0).dim == 0);
}

TEST_CASE("d∘d ≠ 0 is rejected") {
  GradedSpace s({{0, {"a"}}, {1, {"b"}}, {2, {"c"}}});
  CHECK_THROWS_AS(CochainComplex(s, {{0, SparseMatrix::identity(1)}, {1, SparseMatrix::identity(1)}}), ValidationError);
  CHECK(complex_violation(s, {{0, SparseMatrix::identity(1)}, {1, SparseMatrix::identity(1)}}).has_value());
  CHECK_THROWS_AS(CochainComplex(s, {{0, SparseMatrix(2, 1)}}), ValidationError);
}

TEST_CASE("shift") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = random_complex(rng, -2, 2);
    CHECK(shift(c, 0) == c);
    CHECK(shift(shift(c, 1), -1) == c);
    CHECK(shift(shift(c, 3), -3) == c);
    auto c1 = shift(c, 1);
    for (int d = -3; d <= 2; ++d) CHECK(cohomology_at(c1, d).dim == cohomology_at(c, d + 1).dim);
  }
  auto k2 = CochainComplex::zero_differential(GradedSpace::single(2, {"x"}));
  CHECK(shift(k2, 1).dim(1) == 1);
  CHECK(shift(k2, 1).dim(2) == 0);
}

TEST_CASE("tensor") {
  auto unit = CochainComplex::zero_differential(GradedSpace::single(0, {"1"}));
  auto odd = CochainComplex::zero_differential(GradedSpace::single(1, {"x"}));
  auto oo = tensor(odd, odd);
  CHECK(oo.dim(2) == 1);
  CHECK(oo.space().total_dim() == 1);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_complex(rng, -1, 1);
    auto b = random_complex(rng, -1, 1);
    auto t = tensor(a, b);  // construction re-checks d∘d = 0
    CHECK(!complex_violation(t.space(), t.blocks()));
    auto tu = tensor(a, unit);
    for (int d = -1; d <= 1; ++d) {
      CHECK(tu.dim(d) == a.dim(d));
      CHECK(cohomology_at(tu, d).dim == cohomology_at(a, d).dim);
    }
    // Künneth over a field.
    for (int n = -2; n <= 2; ++n) {
      int expect = 0;
      for (int p = -1; p <= 1; ++p) expect += cohomology_at(a, p).dim * cohomology_at(b, n - p).dim;
      CHECK(cohomology_at(t, n).dim == expect);
    }
  }
}

TEST_CASE("tensor associativity and Koszul swap") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_complex(rng, -1, 1), b = random_complex(rng, -1, 1), c = random_complex(rng, 0, 1);
    auto l = tensor(tensor(a, b), c), r = tensor(a, tensor(b, c));
    // relabel: labels coincide as strings "a*b*c"; map basis by label and compare matrices
    for (int d : l.space().degrees()) {
      REQUIRE(l.dim(d) == r.dim(d));
      std::vector<int> perm(l.dim(d));
      for (int i = 0; i < l.dim(d); ++i) perm[i] = r.space().find(l.space().labels(d)[i])->second;
      SparseMatrix dl = l.diff(d), dr = r.diff(d);
      for (int i = 0; i < dl.rows(); ++i)
        for (int j = 0; j < dl.cols(); ++j) {
          int ri = r.space().find(l.space().labels(d + 1)[i])->second;
          CHECK(dl.get(i, j) == dr.get(ri, perm[j]));
        }
    }
    // swap a⊗b -> b⊗a with sign (−1)^{|a||b|} is a chain map squaring to the identity
    auto ab = tensor(a, b), ba = tensor(b, a);
    ChainMap swap{ab, ba, {}};
    for (int d : ab.space().degrees()) {
      SparseMatrix m(ba.dim(d), ab.dim(d));
      for (int i = 0; i < ab.dim(d); ++i) {
        const auto& lab = ab.space().labels(d)[i];
        auto star = lab.find('*');
        std::string x = lab.substr(0, star), y = lab.substr(star + 1);
        int dx = a.space().find(x)->first, dy = b.space().find(y)->first;
        m.set(ba.space().find(y + "*" + x)->second, i, koszul(dx, dy));
      }
      swap.blocks[d] = m;
    }
    CHECK(swap.commutes());
  }
}

TEST_CASE("truncate_good") {
  GradedSpace s({{-1, {"a"}}, {0, {"b"}}});
  CochainComplex c(s, {{-1, SparseMatrix::identity(1)}});
  CHECK(truncate_good(c) == c);

  GradedSpace s2({{0, {"u"}}, {1, {"v"}}});
  CochainComplex id(s2, {{0, SparseMatrix::identity(1)}});
  CHECK(truncate_good(id).space().total_dim() == 0);

  std::mt19937 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto c2 = random_complex(rng, -2, 2);
    auto t = truncate_good(c2);
    for (int d = -2; d <= 0; ++d) CHECK(cohomology_at(t, d).dim == cohomology_at(c2, d).dim);
    CHECK(t.dim(1) == 0);
  }
}

TEST_CASE("sym_power") {
  GradedSpace v({{0, {"a", "b"}}, {1, {"x"}}});
  CHECK(sym_power(v, 0).total_dim() == 1);
  CHECK(sym_power(v, 0).dim(0) == 1);
  CHECK(sym_power(GradedSpace::single(1, {"x"}), 2).total_dim() == 0);
  auto s2 = sym_power(v, 2);
  CHECK(s2.total_dim() == 5);
  CHECK(s2.dim(0) == 3);
  CHECK(s2.dim(1) == 2);
  CHECK(s2.dim(2) == 0);
}

TEST_CASE("sym_power dimension oracle") {
  // Generating function ∏ 1/(1−t)^{even} ∏ (1+t)^{odd}.
  for (int e = 0; e <= 3; ++e)
    for (int o = 0; o <= 3; ++o) {
      std::map<int, std::vector<std::string>> comps;
      for (int i = 0; i < e; ++i) comps[0].push_back("e" + std::to_string(i));
      for (int i = 0; i < o; ++i) comps[1].push_back("o" + std::to_string(i));
      GradedSpace v(comps);
      std::vector<long> poly(6, 0);
      poly[0] = 1;
      for (int i = 0; i < e; ++i)
        for (int k = 1; k < 6; ++k) poly[k] += poly[k - 1];
      for (int i = 0; i < o; ++i)
        for (int k = 5; k >= 1; --k) poly[k] += poly[k - 1];
      for (int n = 0; n < 6; ++n) CHECK(sym_power(v, n).total_dim() == poly[n]);
    }
}

TEST_CASE("Dold-Kan truncated") {
  auto k0 = CochainComplex::zero_differential(GradedSpace::single(0, {"x"}));
  auto dk = dold_kan_truncated(k0, 3);
  CHECK(dk.pi_dims == std::vector<int>{1, 0, 0, 0});
  CHECK(dk.level_dims == std::vector<long>{1, 1, 1, 1});

  GradedSpace s({{-1, {"a"}}, {0, {"b"}}});
  CochainComplex ac(s, {{-1, SparseMatrix::identity(1)}});
  CHECK(dold_kan_truncated(ac, 3).pi_dims == std::vector<int>{0, 0, 0, 0});

  auto k2 = CochainComplex::zero_differential(GradedSpace::single(-2, {"x"}));
  auto d2 = dold_kan_truncated(k2, 3);
  CHECK(d2.pi_dims == std::vector<int>{0, 0, 1, 0});
  CHECK(d2.level_dims == std::vector<long>{0, 0, 1, 3});

  CHECK_THROWS_AS(dold_kan_truncated(CochainComplex::zero_differential(GradedSpace::single(1, {"x"})), 2),
                  ValidationError);
}

TEST_CASE("cohomology invariant under basis permutation") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = random_complex(rng, -2, 2);
    std::map<int, std::vector<int>> perm;
    for (int d : c.space().degrees()) {
      std::vector<int> p(c.dim(d));
      for (int i = 0; i < c.dim(d); ++i) p[i] = i;
      std::shuffle(p.begin(), p.end(), rng);
      perm[d] = p;
    }
    auto pc = permute_basis(c, perm);
    CHECK(cohomology_dims(pc) == cohomology_dims(c));
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(to_string(parse_rational("1/3")) == "1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
}
