#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgl/deformation.hpp"
#include "dgl/quillen.hpp"
#include "support.hpp"

using namespace dgl;

namespace {

DgLieAlgebra abelian_on(std::map<int, std::vector<std::string>> comps, std::map<int, SparseMatrix> d = {}) {
  return catalog::abelian(CochainComplex(GradedSpace(std::move(comps)), std::move(d)));
}

Polynomial poly(std::initializer_list<std::pair<Monomial, Rational>> terms) {
  Polynomial p;
  for (const auto& [m, c] : terms) p[m] = c;
  return p;
}

}  // namespace

TEST_CASE("dual numbers") {
  for (int n = 0; n <= 3; ++n) {
    auto a = dual_numbers(n);
    CHECK(a.order() == 1);
    CHECK(a.dim() == 2);
    CHECK(a.algebra().complex().total_differential().is_zero());
    CHECK(a.algebra().degree(a.m_indices()[0]) == -n);
    for (const auto& g : {catalog::sl2(), catalog::heisenberg(), catalog::ac_algebra()})
      CHECK(nerve_host(g, a).is_abelian());
  }
}

TEST_CASE("homotopy of dual-number nerves") {
  std::mt19937 rng(99);
  std::vector<DgLieAlgebra> corpus = {catalog::line(1), catalog::sl2(), catalog::ac_algebra(), catalog::heisenberg(),
                                      catalog::upper_triangular4()};
  while (corpus.size() < 14) corpus.push_back(dgl::testing::random_dgla(rng, 6));
  std::map<int, std::set<int>> seen;  // dim H^{1+n} -> π₀ dims seen
  for (const auto& g : corpus)
    for (int n = 0; n <= 2; ++n) {
      auto r = dual_numbers_homotopy(g, n, 2, 2);
      CHECK(r.agree());
      int h1n = cohomology_at(g.complex(), 1 + n).dim;
      int hn = cohomology_at(g.complex(), n).dim;
      int hn1 = cohomology_at(g.complex(), n - 1).dim;
      CHECK(r.nerve_pi == std::vector<int>{h1n, hn, hn1});
      seen[h1n].insert(r.nerve_pi[0]);
    }
  // different H^{1+n} dimensions give different π₀ dimensions
  std::set<int> all;
  for (const auto& [h, pis] : seen) {
    CHECK(pis.size() == 1);
    CHECK(all.insert(*pis.begin()).second);
  }

  auto line = catalog::line(1);
  CHECK(dual_numbers_homotopy(line, 0, 2, 2).nerve_pi == std::vector<int>{1, 0, 0});
  // H²(g) ≠ 0 seen at n = 1 in π₀
  SparseMatrix d(1, 1);
  d.set(0, 0, 1);
  auto g2 = abelian_on({{1, {"p"}}, {2, {"q", "r"}}}, {{1, SparseMatrix(2, 1)}});
  CHECK(dual_numbers_homotopy(g2, 1, 1, 2).nerve_pi[0] == 2);
  auto acyclic = abelian_on({{0, {"p"}}, {1, {"q"}}}, {{0, d}});
  for (int n = 0; n <= 2; ++n) CHECK(dual_numbers_homotopy(acyclic, n, 2, 2).nerve_pi == std::vector<int>{0, 0, 0});
}

TEST_CASE("formal spaces") {
  auto pos = abelian_on({{1, {"p"}}, {2, {"q"}}});
  auto r = formal_space_test(pos);
  CHECK(r.formal);
  CHECK(r.consistent);
  CHECK(!r.loop);

  auto sl2 = formal_space_test(catalog::sl2());
  CHECK(!sl2.formal);
  CHECK(sl2.obstructing_degrees == std::vector<int>{0});
  CHECK(sl2.nerve_pi[1] == 3);
  CHECK(sl2.consistent);
  REQUIRE(sl2.loop);
  CHECK(!sl2.loop->empty());

  auto ex = sl2_example(3);
  auto target = formal_space_test(ex.sl2);
  CHECK(!target.formal);
  CHECK(target.consistent);
}

TEST_CASE("classical part") {
  auto zero = catalog::abelian(CochainComplex::zero_differential(GradedSpace(std::map<int, std::vector<std::string>>{})));
  for (const auto& a : {dual_numbers(0), ArtinianDgAlgebra{catalog::truncated_polynomial(3)}}) {
    auto c = classical_part(zero, a);
    CHECK(c.exact);
    CHECK(c.count == 1);
  }
  auto ac = catalog::ac_algebra();
  auto direct = classical_part_direct(ac);
  CHECK(direct.exact);
  CHECK(direct.count == 2);
  auto k = ArtinianDgAlgebra{catalog::ground_field()};
  for (const auto& g : {ac, catalog::sl2(), catalog::heisenberg()}) CHECK(classical_part(g, k).count == 1);
  CHECK(classical_part(ac, dual_numbers(0)).count == 1);
  // square-zero: π₀ = H¹(g) ⊗ m
  auto lin = classical_part(catalog::line(1), dual_numbers(0));
  CHECK(!lin.finite);
  CHECK(lin.dimension == 1);
  CHECK_THROWS_AS(classical_part(ac, dual_numbers(1)), ValidationError);
}

TEST_CASE("rational roots") {
  CHECK(rational_roots({0, 1, Rational(1, 2)}) == std::vector<Rational>{-2, 0});
  CHECK(rational_roots({-1, 0, 4}) == std::vector<Rational>{frac(-1, 2), frac(1, 2)});
  CHECK(rational_roots({1, 0, 1}).empty());
  CHECK(rational_roots({6, -5, 1}) == std::vector<Rational>{2, 3});
}

TEST_CASE("one-truncation") {
  auto pos = abelian_on({{1, {"p"}}, {2, {"q"}}});
  auto t = one_truncation(pos);
  CHECK(t.h.dim() == pos.dim());
  CHECK(t.h.space() == pos.space());

  // g⁰ acting trivially with d: g⁰ → g¹ of rank 1
  SparseMatrix d0(3, 2), d1(1, 3);
  d0.set(0, 0, 1);
  d0.set(1, 0, 1);
  d1.set(0, 2, 1);
  auto g = abelian_on({{0, {"s", "w"}}, {1, {"a", "b", "c"}}, {2, {"z"}}}, {{0, d0}, {1, d1}});
  auto tr = one_truncation(g);
  CHECK(tr.rank_d0 == rank(d0));
  CHECK(tr.h.space().dim(1) == 3 - rank(d0));
  CHECK(tr.h.space().dim(0) == 0);
  CHECK(verify_lie_map(tr.h, g, tr.inclusion).ok);
  CHECK(cohomology_at(tr.h.complex(), 1).dim == cohomology_at(g.complex(), 1).dim);

  std::mt19937 rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    auto r = dgl::testing::random_dgla(rng, 6);
    auto tt = one_truncation(r);
    CHECK(verify_lie_map(tt.h, r, tt.inclusion).ok);
    CHECK(cohomology_at(tt.h.complex(), 1).dim == cohomology_at(r.complex(), 1).dim);
  }
  // a V inside the image is rejected
  std::vector<Vec> bad{g.element({{"a", 1}, {"b", 1}}), g.basis("c")};
  CHECK_THROWS_AS(one_truncation(g, bad), ValidationError);
  std::vector<Vec> good{g.element({{"a", 1}, {"b", 2}}), g.basis("c")};
  CHECK(one_truncation(g, good).h.space().dim(1) == 2);
}

TEST_CASE("hull presentation") {
  auto ab = abelian_on({{1, {"p", "q"}}, {2, {"r"}}});
  auto hp = hull_presentation(one_truncation(ab), 4);
  CHECK(hp.generators.size() == 2);
  for (const auto& rel : hp.relations) CHECK(rel.empty());
  CHECK(!hull_points_over_k(hp).finite);

  auto ac = catalog::ac_algebra();
  auto h = hull_presentation(one_truncation(ac), 2);
  REQUIRE(h.generators == std::vector<std::string>{"a"});
  REQUIRE(h.relations.size() == 1);
  CHECK(h.relations[0] == poly({{{1}, 1}, {{2}, frac(1, 2)}}));
  CHECK(to_string(h.relations[0], {"alpha"}) == "alpha + 1/2*alpha^2");
  auto over_k = hull_points_over_k(h);
  CHECK(over_k.count == 2);
  CHECK(over_k.count == classical_part_direct(ac).count);
  CHECK(hull_points(h, dual_numbers(0)).count == classical_part(ac, dual_numbers(0)).count);
  CHECK(hull_presentation(one_truncation(ac), 5).relations == h.relations);

  // relations are the MC equation in coordinates
  std::mt19937 rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    auto g = dgl::testing::random_dgla(rng, 6);
    auto t = one_truncation(g);
    auto p = hull_presentation(t, 3);
    const auto deg1 = t.h.indices_in_degree(1), deg2 = t.h.indices_in_degree(2);
    std::uniform_int_distribution<int> c(-3, 3);
    Vec x = t.h.zero();
    Vec alpha;
    for (int i : deg1) {
      x[i] = c(rng);
      alpha.push_back(x[i]);
    }
    Vec res = mc_check(t.h, x).residual;
    for (std::size_t j = 0; j < deg2.size(); ++j) {
      Rational v = 0;
      for (const auto& [m, coef] : p.relations[j]) {
        Rational term = coef;
        for (std::size_t i = 0; i < m.size(); ++i)
          for (int e = 0; e < m[i]; ++e) term *= alpha[i];
        v += term;
      }
      CHECK(v == res[deg2[j]]);
    }
  }
}

TEST_CASE("Tor of intersections") {
  auto u = [](int e) { return Monomial{e}; };
  // transversal points
  auto t0 = tor_intersection(1, {poly({{u(1), 1}})}, {poly({{u(1), 1}, {u(0), -1}})}, 3);
  CHECK(t0.dims == std::vector<int>{0, 0, 0, 0});
  auto t1 = tor_intersection(1, {poly({{u(1), 1}})}, {poly({{u(1), 1}})}, 3);
  CHECK(t1.dims == std::vector<int>{1, 1, 0, 0});
  auto t2 = tor_intersection(1, {poly({{u(2), 1}})}, {poly({{u(2), 1}})}, 3);
  CHECK(t2.dims == std::vector<int>{2, 2, 0, 0});
  // two variables: Tor(k[u,v]/(u²,v²), k) = Λ(k²)
  std::vector<Polynomial> sq{poly({{{2, 0}, 1}}), poly({{{0, 2}, 1}})}, pt{poly({{{1, 0}, 1}}), poly({{{0, 1}, 1}})};
  CHECK(tor_intersection(2, sq, pt, 3).dims == std::vector<int>{1, 2, 1, 0});
  CHECK(tor_intersection(2, pt, sq, 3).dims == std::vector<int>{1, 2, 1, 0});
  // a non-monomial Gröbner case: I = (u² − v, v² − u), J = (u − v, v²)
  std::vector<Polynomial> i{poly({{{2, 0}, 1}, {{0, 1}, -1}}), poly({{{0, 2}, 1}, {{1, 0}, -1}})};
  std::vector<Polynomial> j{poly({{{1, 0}, 1}, {{0, 1}, -1}}), poly({{{0, 2}, 1}})};
  auto ij = tor_intersection(2, i, j, 2), ji = tor_intersection(2, j, i, 2);
  CHECK(ij.dims == ji.dims);
  CHECK(ij.quotient_dims == std::vector<int>{4, 2});
  // symmetry over a small corpus of regular sequences in one variable
  std::vector<Polynomial> one{poly({{u(1), 1}}), poly({{u(2), 1}}), poly({{u(2), 1}, {u(1), -1}}), poly({{u(3), 1}, {u(1), -1}}),
                              poly({{u(1), 1}, {u(0), 1}})};
  for (const auto& p : one)
    for (const auto& q : one) {
      auto a = tor_intersection(1, {p}, {q}, 2), b = tor_intersection(1, {q}, {p}, 2);
      CHECK(a.dims == b.dims);
    }
  // not regular: (u, uv) in k[u, v]
  CHECK_THROWS_AS(tor_intersection(2, {poly({{{1, 0}, 1}}), poly({{{1, 1}, 1}})}, pt, 2), ValidationError);
  CHECK_THROWS_AS(tor_intersection(1, {poly({{u(0), 1}})}, {poly({{u(1), 1}})}, 2), ValidationError);
}

TEST_CASE("quotient by a group action") {
  auto h = abelian_on({{1, {"u", "v"}}});
  auto g = catalog::line(0, "s");
  SparseMatrix act(2, 2);
  act.set(1, 0, 1);  // s·u = v
  ArtinianDgAlgebra a{catalog::truncated_polynomial(2)};
  auto hh = nerve_host(h, a);
  std::vector<Vec> sample{hh.basis("x*u"), hh.element({{"x*u", 1}, {"x^2*v", 1}}), hh.basis("x*v"), hh.zero()};
  auto r = quotient_nerve_compare(g, h, {act}, a, sample);
  CHECK(r.resolved);
  CHECK(r.agree);
  CHECK(r.fibre.components_upper == 4);
  // explicit orbit of x⊗u: x⊗u + μ x²⊗v
  CHECK(r.semidirect.components_upper == 3);
  CHECK(r.orbit_classes == 3);

  auto trivial = quotient_nerve_compare(g, h, {SparseMatrix(2, 2)}, a, sample);
  CHECK(trivial.agree);
  CHECK(trivial.semidirect.components_upper == 4);

  auto none = abelian_on({});
  auto empty = quotient_nerve_compare(g, none, {SparseMatrix(0, 0)}, a, {nerve_host(none, a).zero()});
  CHECK(empty.semidirect.components_upper == 1);
  CHECK(empty.fibre.components_upper == 1);
}

TEST_CASE("trivial torsor nerve") {
  ArtinianDgAlgebra a{catalog::truncated_polynomial(2)};
  auto sl2 = catalog::sl2();
  auto k = trivial_torsor_nerve(catalog::ground_field(), sl2, a, 2, 2);
  FormHost direct(nerve_host(sl2, a));
  for (int n = 1; n <= 2; ++n)
    for (int i = 1; i <= n; ++i)
      CHECK(k.level_dims[n][i - 1] == static_cast<int>(k_basis(direct, n, i, 2).size()));
  auto k2 = trivial_torsor_nerve(catalog::split_product(), sl2, a, 2, 2);
  for (int n = 1; n <= 2; ++n)
    for (int i = 1; i <= n; ++i) CHECK(k2.level_dims[n][i - 1] == 2 * k.level_dims[n][i - 1]);
  CHECK(k.pi0.count == 1);
  auto pt = trivial_torsor_nerve(catalog::ground_field(), sl2, ArtinianDgAlgebra{catalog::ground_field()}, 2, 2);
  for (const auto& level : pt.level_dims)
    for (int d : level) CHECK(d == 0);
  CHECK(pt.pi0.count == 1);
}
