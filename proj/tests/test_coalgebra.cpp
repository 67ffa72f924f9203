#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgl/catalog.hpp"
#include "dgl/coalgebra.hpp"
#include "support.hpp"

using namespace dgl;

namespace {

// Local artinian algebras used throughout: truncated polynomial rings in
// various degrees, their tensor products and a Koszul-type dg algebra.
std::vector<std::pair<ArtinianDgAlgebra, std::string>> artinian_pool() {
  std::vector<std::pair<ArtinianDgAlgebra, std::string>> out;
  out.push_back({ArtinianDgAlgebra(catalog::ground_field()), "k"});
  for (int n = 1; n <= 4; ++n) out.push_back({ArtinianDgAlgebra(catalog::truncated_polynomial(n)), "k[x]/x^" + std::to_string(n + 1)});
  out.push_back({ArtinianDgAlgebra(catalog::truncated_polynomial(1, -1)), "exterior"});
  out.push_back({ArtinianDgAlgebra(catalog::truncated_polynomial(3, -2)), "k[x]/x^4, |x|=-2"});
  for (int n = 1; n <= 3; ++n) out.push_back({ArtinianDgAlgebra(catalog::koszul_truncated(n)), "koszul " + std::to_string(n)});
  out.push_back({ArtinianDgAlgebra(tensor_cdga(catalog::truncated_polynomial(2), catalog::truncated_polynomial(1)), "1*1"),
                 "k[x,y]/(x^3,y^2)"});
  out.push_back({ArtinianDgAlgebra(tensor_cdga(catalog::truncated_polynomial(1, -1), catalog::truncated_polynomial(1, -1)), "1*1"),
                 "two odd"});
  out.push_back({ArtinianDgAlgebra(tensor_cdga(catalog::koszul_truncated(1), catalog::truncated_polynomial(1)), "1*1"),
                 "koszul (x) dual numbers"});
  return out;
}

// Is the tensor in V⊗V? Equivalent to: every row and every column of its
// coefficient matrix lies in V.
bool in_square(const Tensor2& t, const std::vector<Vec>& v, int dim) {
  std::map<int, Vec> rows, cols;
  for (const auto& [ab, c] : t) {
    auto& r = rows.try_emplace(ab.first, zero_vec(dim)).first->second;
    r[ab.second] = c;
    auto& k = cols.try_emplace(ab.second, zero_vec(dim)).first->second;
    k[ab.first] = c;
  }
  for (const auto& [i, r] : rows)
    if (!in_span(v, r)) return false;
  for (const auto& [i, k] : cols)
    if (!in_span(v, k)) return false;
  return true;
}

Tensor2 reduced_coproduct(const UnitalCoalgebra& x, Vec v) {
  Rational e = 0;
  for (int i = 0; i < x.dim(); ++i) e += x.counit()[i] * v[i];
  v[x.unit()] -= e;
  Tensor2 t = x.coproduct(v);
  for (int i = 0; i < x.dim(); ++i) {
    if (v[i] == 0) continue;
    for (auto key : {std::pair{x.unit(), i}, std::pair{i, x.unit()}}) {
      t[key] -= v[i];
      if (t[key] == 0) t.erase(key);
    }
  }
  return t;
}

}  // namespace

TEST_CASE("ground coalgebra") {
  auto k = UnitalCoalgebra::ground();
  CHECK(verify_coalgebra(k).ok);
  CHECK(is_unital(k));
  CHECK(canonical_dims(k, 2) == std::vector<int>{1, 1, 1});
  auto r = reduced(k);
  CHECK(r.complex.space().total_dim() == 0);
  CHECK(r.delta_bar.empty());
  auto dk = dual_artinian(ArtinianDgAlgebra(catalog::ground_field()));
  CHECK(dk.dim() == 1);
  CHECK(dk.space().label_of(0) == "1");
}

TEST_CASE("dual numbers") {
  auto x = dual_artinian(ArtinianDgAlgebra(catalog::truncated_polynomial(1)));
  REQUIRE(x.dim() == 2);
  int u = x.index("1"), e = x.index("x'");
  CHECK(verify_coalgebra(x).ok);
  Tensor2 expect{{{u, e}, 1}, {{e, u}, 1}};
  CHECK(x.delta(e) == expect);
  CHECK(is_unital(x));
  auto r = reduced(x);
  CHECK(r.complex.space().total_dim() == 1);
  CHECK(r.delta_bar[0].empty());
}

TEST_CASE("k[e]/(e^3) dual: filtration and coproduct") {
  auto a = ArtinianDgAlgebra(catalog::truncated_polynomial(2));
  CHECK(a.order() == 2);
  auto x = dual_artinian(a);
  CHECK(verify_coalgebra(x).ok);
  int u = x.index("1"), e = x.index("x'"), e2 = x.index("x^2'");
  // transpose of x·x = x^2, 1·x^2 = x^2
  Tensor2 expect{{{u, e2}, 1}, {{e2, u}, 1}, {{e, e}, 1}};
  CHECK(x.delta(e2) == expect);
  auto x1 = canonical_level(x, 1);
  CHECK(x1.size() == 2);
  CHECK(in_span(x1, unit_vec(3, u)));
  CHECK(in_span(x1, unit_vec(3, e)));
  CHECK(canonical_level(x, 2).size() == 3);
  CHECK(canonical_level(x, 0).size() == 1);
  CHECK(filtration_length(x) == 2);
}

TEST_CASE("broken counit is rejected") {
  auto x = dual_artinian(ArtinianDgAlgebra(catalog::truncated_polynomial(1)));
  Vec eps = zero_vec(2);
  UnitalCoalgebra broken(x.complex(), x.deltas(), eps, "1");
  auto c = verify_coalgebra(broken);
  CHECK_FALSE(c.ok);
  CHECK(c.violation.find("counit") != std::string::npos);

  // a non-cocommutative coproduct is named
  auto deltas = x.deltas();
  int u = x.index("1"), e = x.index("x'");
  deltas[e] = Tensor2{{{u, e}, 2}};
  auto c2 = verify_coalgebra(UnitalCoalgebra(x.complex(), deltas, x.counit(), "1"));
  CHECK_FALSE(c2.ok);
  CHECK(c2.violation.find("x'") != std::string::npos);
}

TEST_CASE("second group-like element is not unital") {
  GradedSpace s = GradedSpace::single(0, {"1", "g"});
  std::vector<Tensor2> delta{{{{0, 0}, 1}}, {{{1, 1}, 1}}};
  UnitalCoalgebra x(CochainComplex::zero_differential(s), delta, Vec{1, 1}, "1");
  CHECK(verify_coalgebra(x).ok);
  // oracle: with h = g - 1, Δ̄h = h⊗h, so the n-fold reduced coproduct of h is h^{⊗n+1} ≠ 0
  Tensor2 hh = reduced_coproduct(x, Vec{-1, 1});
  CHECK(hh == Tensor2{{{0, 0}, 1}, {{0, 1}, -1}, {{1, 0}, -1}, {{1, 1}, 1}});
  CHECK(canonical_dims(x, 4) == std::vector<int>{1, 1, 1, 1, 1});
  CHECK_FALSE(is_unital(x));
  CHECK(filtration_length(x) == -1);
  CHECK_THROWS_AS(canonical_filtered(x), ValidationError);
}

TEST_CASE("non-local algebras are rejected") {
  // k × k presented as span(1, p), p² = p
  ProductTable p;
  p[{0, 0}] = {{0, 1}};
  p[{0, 1}] = {{1, 1}};
  p[{1, 1}] = {{1, 1}};
  Cdga kk(CochainComplex::zero_differential(GradedSpace::single(0, {"1", "p"})), p);
  CHECK_THROWS_AS(ArtinianDgAlgebra{kk}, ValidationError);
  CHECK_THROWS_AS(ArtinianDgAlgebra(catalog::split_product(), "p"), ValidationError);
  // positive degree
  CHECK_THROWS_AS(ArtinianDgAlgebra(catalog::truncated_polynomial(1, 2)), ValidationError);
}

TEST_CASE("duals of artinian algebras: axioms, unitality, X_n = (A/m^{n+1})*") {
  for (const auto& [a, name] : artinian_pool()) {
    CAPTURE(name);
    auto x = dual_artinian(a);
    auto cert = verify_coalgebra(x);
    CHECK_MESSAGE(cert.ok, cert.violation);
    CHECK(is_unital(x));
    CHECK(filtration_length(x) <= a.order());
    CHECK(filtration_length(x) == a.order());
    // positions of A's basis vectors inside A*
    std::vector<int> pos(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
      std::string l = a.algebra().space().label_of(i);
      pos[i] = i == a.unit() ? x.index("1") : x.index(l + "'");
    }
    for (int n = 0; n <= a.order() + 1; ++n) {
      auto level = canonical_level(x, n);
      auto mn = a.ideal_power(n + 1);
      CHECK(static_cast<int>(level.size()) == a.dim() - static_cast<int>(mn.size()));
      for (const auto& v : level)
        for (const auto& w : mn) {
          Rational pair = 0;
          for (int i = 0; i < a.dim(); ++i) pair += v[pos[i]] * w[i];
          CHECK(pair == 0);
        }
    }
    // stabilization
    CHECK(static_cast<int>(canonical_level(x, x.dim()).size()) == x.dim());
    // canonical filtration is admissible
    auto f = canonical_filtered(x);
    CHECK(is_admissible_coalgebra(f).admissible);
  }
}

TEST_CASE("reduced coproduct lands in X_n (x) X_n on X_{n+1}") {
  std::vector<UnitalCoalgebra> xs;
  for (const auto& [a, name] : artinian_pool()) xs.push_back(dual_artinian(a));
  xs.push_back(UnitalCoalgebra::ground());
  for (const auto& x : xs) {
    int len = filtration_length(x);
    for (int n = 0; n < len; ++n) {
      auto lower = canonical_level(x, n);
      for (const auto& v : canonical_level(x, n + 1)) CHECK(in_square(reduced_coproduct(x, v), lower, x.dim()));
    }
  }
}

TEST_CASE("reduced coalgebra is coassociative and cocommutative") {
  for (const auto& [a, name] : artinian_pool()) {
    CAPTURE(name);
    auto r = reduced(dual_artinian(a));
    const auto& s = r.complex.space();
    int n = s.total_dim();
    for (int i = 0; i < n; ++i) {
      std::map<std::vector<int>, Rational> left, right;
      for (const auto& [ab, c] : r.delta_bar[i]) {
        for (const auto& [pq, e] : r.delta_bar[ab.first]) left[{pq.first, pq.second, ab.second}] += c * e;
        for (const auto& [pq, e] : r.delta_bar[ab.second]) right[{ab.first, pq.first, pq.second}] += c * e;
      }
      std::erase_if(left, [](const auto& kv) { return kv.second == 0; });
      std::erase_if(right, [](const auto& kv) { return kv.second == 0; });
      CHECK(left == right);
      Tensor2 sw;
      for (const auto& [ab, c] : r.delta_bar[i])
        sw[{ab.second, ab.first}] = c * koszul(s.degree_of(ab.first), s.degree_of(ab.second));
      CHECK(sw == r.delta_bar[i]);
    }
  }
}

TEST_CASE("duals of surjections are injective coalgebra maps") {
  for (int deg : {0, -2}) {
    for (int n = 1; n <= 4; ++n)
      for (int m = 0; m < n; ++m) {
        ArtinianDgAlgebra a(catalog::truncated_polynomial(n, deg)), b(catalog::truncated_polynomial(m, deg));
        // x^k -> x^k for k <= m, else 0; indices follow the degree order of each algebra
        SparseMatrix f(b.dim(), a.dim());
        for (int k = 0; k <= m; ++k) {
          std::string l = k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k);
          f.set(b.algebra().index(l), a.algebra().index(l), 1);
        }
        auto g = dual_map(a, b, f);
        auto cert = verify_coalgebra_map(dual_artinian(b), dual_artinian(a), g);
        CHECK_MESSAGE(cert.ok, cert.violation);
        CHECK(rank(g) == b.dim());
      }
  }
  // a map that is not multiplicative fails the coproduct check
  ArtinianDgAlgebra a(catalog::truncated_polynomial(2)), b(catalog::truncated_polynomial(2));
  SparseMatrix f = SparseMatrix::identity(3);
  f.set(a.algebra().index("x^2"), a.algebra().index("x^2"), 2);
  CHECK_FALSE(verify_coalgebra_map(dual_artinian(b), dual_artinian(a), dual_map(a, b, f)).ok);
}
