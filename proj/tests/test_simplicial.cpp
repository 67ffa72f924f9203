#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgl/simplicial.hpp"
#include "support.hpp"

#include <functional>
#include <set>

using namespace dgl;

namespace {

struct Named {
  std::string name;
  SimplicialCategory c;
};

std::vector<Named> corpus(int levels) {
  return {
      {"trivial", constant_simplicial_category(trivial_category(), levels)},
      {"Z2", constant_simplicial_category(cyclic_group_category(2), levels)},
      {"Z3", constant_simplicial_category(cyclic_group_category(3), levels)},
      {"S3", constant_simplicial_category(symmetric_group_category(3), levels)},
      {"E(Z2)", codiscrete_simplicial_category(cyclic_group_category(2), levels)},
      {"chaotic2(Z2)", constant_simplicial_category(chaotic_groupoid(2, {"0", "1"}, {{0, 1}, {1, 0}}), levels)},
      {"E(chaotic2(Z2))", codiscrete_simplicial_category(chaotic_groupoid(2, {"0", "1"}, {{0, 1}, {1, 0}}), levels)},
      {"monoid", constant_simplicial_category(idempotent_monoid_category(), levels)},
      {"E(monoid)", codiscrete_simplicial_category(idempotent_monoid_category(), levels)},
  };
}

// The classifying nerve of a group table, built directly.
TruncatedSimplicialSet group_nerve(const std::vector<std::string>& names, const std::vector<std::vector<int>>& mult, int levels) {
  const int g = static_cast<int>(names.size());
  TruncatedSimplicialSet s;
  std::vector<std::vector<std::vector<int>>> tuples(levels + 1);
  std::vector<std::map<std::vector<int>, int>> index(levels + 1);
  for (int n = 0; n <= levels; ++n) {
    std::vector<int> t;
    std::function<void()> rec = [&]() {
      if (static_cast<int>(t.size()) == n) {
        index[n][t] = static_cast<int>(tuples[n].size());
        tuples[n].push_back(t);
        return;
      }
      for (int a = 0; a < g; ++a) {
        t.push_back(a);
        rec();
        t.pop_back();
      }
    };
    rec();
    s.labels.emplace_back();
    for (const auto& tt : tuples[n]) {
      std::string l = n == 0 ? "*" : "[";
      for (std::size_t i = 0; i < tt.size(); ++i) l += (i ? "|" : "") + names[tt[i]];
      s.labels[n].push_back(n == 0 ? l : l + "]");
    }
  }
  s.face.resize(levels + 1);
  s.degeneracy.resize(levels + 1);
  int e = 0;
  while (mult[e][1 % g] != 1 % g) ++e;
  for (int n = 0; n <= levels; ++n) {
    if (n >= 1) s.face[n].assign(n + 1, {});
    if (n < levels) s.degeneracy[n].assign(n + 1, {});
    for (const auto& t : tuples[n]) {
      for (int i = 0; i <= n && n >= 1; ++i) {
        std::vector<int> u;
        for (int j = 0; j < n; ++j) {
          if (j == i - 1 && i < n) {
            u.push_back(mult[t[j + 1]][t[j]]);
            ++j;
          } else if (!(i == 0 && j == 0) && !(i == n && j == n - 1)) {
            u.push_back(t[j]);
          }
        }
        s.face[n][i].push_back(index[n - 1].at(u));
      }
      for (int i = 0; i <= n && n < levels; ++i) {
        auto u = t;
        u.insert(u.begin() + i, e);
        s.degeneracy[n][i].push_back(index[n + 1].at(u));
      }
    }
  }
  return s;
}

// Same simplicial set up to the given relabelling.
bool same_by_labels(const TruncatedSimplicialSet& a, const TruncatedSimplicialSet& b) {
  if (a.levels() != b.levels()) return false;
  for (int n = 0; n <= a.levels(); ++n) {
    if (a.size(n) != b.size(n)) return false;
    for (int x = 0; x < a.size(n); ++x) {
      int y = b.find(n, a.labels[n][x]);
      if (y < 0) return false;
      for (int i = 0; i <= n; ++i) {
        if (n >= 1 && a.labels[n - 1][a.d(i, n, x)] != b.labels[n - 1][b.d(i, n, y)]) return false;
        if (n < a.levels() && a.labels[n + 1][a.s(i, n, x)] != b.labels[n + 1][b.s(i, n, y)]) return false;
      }
    }
  }
  return true;
}

// Δ[1]: monotone sequences in {0, 1}.
TruncatedSimplicialSet interval(int levels) {
  auto e = codiscrete_simplicial_set({"0", "1"}, levels);
  TruncatedSimplicialSet s;
  std::vector<std::vector<int>> keep(levels + 1), pos(levels + 1);
  for (int n = 0; n <= levels; ++n) {
    pos[n].assign(e.size(n), -1);
    for (int x = 0; x < e.size(n); ++x) {
      const auto& l = e.labels[n][x];
      if (l.find("1,0") == std::string::npos) {
        pos[n][x] = static_cast<int>(keep[n].size());
        keep[n].push_back(x);
      }
    }
    s.labels.emplace_back();
    for (int x : keep[n]) s.labels[n].push_back(e.labels[n][x]);
  }
  s.face.resize(levels + 1);
  s.degeneracy.resize(levels + 1);
  for (int n = 0; n <= levels; ++n) {
    if (n >= 1) s.face[n].assign(n + 1, {});
    if (n < levels) s.degeneracy[n].assign(n + 1, {});
    for (int x : keep[n])
      for (int i = 0; i <= n; ++i) {
        if (n >= 1) s.face[n][i].push_back(pos[n - 1][e.d(i, n, x)]);
        if (n < levels) s.degeneracy[n][i].push_back(pos[n + 1][e.s(i, n, x)]);
      }
  }
  return s;
}

bool commute(const std::vector<std::vector<int>>& rep, int a, int b) {
  const auto &p = rep[a], &q = rep[b];
  for (std::size_t c = 0; c < p.size(); ++c)
    if (p[q[c]] != q[p[c]]) return false;
  return true;
}

}  // namespace

TEST_CASE("simplicial sets") {
  for (int L = 0; L <= 4; ++L) {
    CHECK(!simplicial_identity_violation(constant_simplicial_set({"a", "b"}, L)));
    CHECK(!simplicial_identity_violation(codiscrete_simplicial_set({"a", "b", "c"}, std::min(L, 3))));
  }
  auto e = codiscrete_simplicial_set({"a", "b"}, 3);
  CHECK(e.size(3) == 16);
  auto broken = e;
  std::swap(broken.face[2][0][1], broken.face[2][0][2]);
  CHECK(simplicial_identity_violation(broken));
  auto two = disjoint_union(constant_simplicial_set({"p"}, 3), constant_simplicial_set({"q"}, 3));
  CHECK(!simplicial_identity_violation(two));
  CHECK(!simplicial_identity_violation(interval(3)));
}

TEST_CASE("simplicial categories") {
  for (const auto& [name, c] : corpus(3)) {
    INFO(name);
    CHECK(!simplicial_category_violation(c));
  }
  auto bad = constant_simplicial_category(cyclic_group_category(3), 2);
  bad.compose[1][{0, 0, 0}][1][1] = 0;  // 1 + 1 = 0 at level 1 only
  CHECK(simplicial_category_violation(bad));
}

TEST_CASE("nerves of trivial and constant categories") {
  for (int L = 0; L <= 3; ++L) {
    auto c = constant_simplicial_category(trivial_category(), L);
    auto tn = tn_nerve(c, L), wb = wbar_nerve(c, L);
    for (int n = 0; n <= L; ++n) {
      CHECK(tn.size(n) == 1);
      CHECK(wb.size(n) == 1);
    }
  }
  auto z3 = cyclic_group_category(3);
  auto s3 = symmetric_group_category(3);
  for (const auto& g : {z3, s3, cyclic_group_category(2)}) {
    const auto& names = g.arrows.at({0, 0});
    const auto& mult = g.compose.at({0, 0, 0});
    auto c = constant_simplicial_category(g, 3);
    auto tn = tn_nerve(c, 3), wb = wbar_nerve(c, 3);
    auto oracle = group_nerve(names, mult, 3);
    int count = 1;
    for (int n = 0; n <= 3; ++n, count *= static_cast<int>(names.size())) {
      CHECK(tn.size(n) == count);
      CHECK(wb.size(n) == count);
    }
    CHECK(same_by_labels(tn, oracle));
    CHECK(same_by_labels(wb, oracle));
    // π and ρ are the identity under the identification by labels
    auto pi = pi_map(c, tn, wb), rho = rho_map(c, tn, wb);
    for (int n = 0; n <= 3; ++n)
      for (int x = 0; x < tn.size(n); ++x) {
        CHECK(wb.labels[n][pi.map[n][x]] == tn.labels[n][x]);
        CHECK(tn.labels[n][rho.map[n][x]] == wb.labels[n][x]);
      }
  }
}

TEST_CASE("TN, W-bar and the comparison maps") {
  for (const auto& [name, c] : corpus(3)) {
    INFO(name);
    auto tn = tn_nerve(c, 3), wb = wbar_nerve(c, 3);
    CHECK(!simplicial_identity_violation(tn));
    CHECK(!simplicial_identity_violation(wb));
    auto pi = pi_map(c, tn, wb), rho = rho_map(c, tn, wb);
    CHECK(!simplicial_map_violation(tn, wb, pi));
    CHECK(is_identity(compose_maps(pi, rho)));
    if (name.rfind("E(", 0) != 0) CHECK(!simplicial_map_violation(wb, tn, rho));
  }
  // ρ commutes with degeneracies and outer faces; at an inner face i it needs
  // s_0^{i-1} g_i = s_0^i d_0 g_i, which on E(G) fails exactly when the first two
  // entries of g_i differ: a fraction 1 - 1/|G| of W̄_n for every inner i
  for (int m : {2, 3}) {
    const int L = m == 2 ? 3 : 2;
    auto c = codiscrete_simplicial_category(cyclic_group_category(m), L);
    auto tn = tn_nerve(c, L), wb = wbar_nerve(c, L);
    auto rho = rho_map(c, tn, wb);
    for (int n = 0; n <= L; ++n)
      for (int i = 0; i <= n; ++i) {
        int face_bad = 0, degen_bad = 0;
        for (int x = 0; x < wb.size(n); ++x) {
          if (n >= 1 && rho.map[n - 1][wb.d(i, n, x)] != tn.d(i, n, rho.map[n][x])) ++face_bad;
          if (n < L && rho.map[n + 1][wb.s(i, n, x)] != tn.s(i, n, rho.map[n][x])) ++degen_bad;
        }
        CHECK(degen_bad == 0);
        CHECK(face_bad == (i > 0 && i < n ? wb.size(n) / m * (m - 1) : 0));
      }
  }
  // ρ at level 2 lands in strings of degenerate arrows: s_0 duplicates the first entry
  auto c = codiscrete_simplicial_category(cyclic_group_category(2), 3);
  auto tn = tn_nerve(c, 3), wb = wbar_nerve(c, 3);
  auto rho = rho_map(c, tn, wb);
  for (int x = 0; x < wb.size(2); ++x) {
    std::string l = tn.labels[2][rho.map[2][x]];  // "[(a,a,b)|(c,c,c)]"
    auto bar = l.find('|');
    std::string first = l.substr(1, bar - 1), second = l.substr(bar + 1, l.size() - bar - 2);
    CHECK(first[1] == first[3]);
    CHECK(second[1] == second[3]);
    CHECK(second[3] == second[5]);
  }
  // level sizes of W̄ for E(Z2): |hom_1|·|hom_0| = 4·2 at level 2
  CHECK(wb.size(2) == 8);
  CHECK(tn.size(2) == 64);
}

TEST_CASE("horn search") {
  CHECK(horn_search(constant_simplicial_set({"a", "b"}, 3)).kan);
  CHECK(horn_search(codiscrete_simplicial_set({"a", "b"}, 3)).kan);
  auto i = interval(3);
  auto r = horn_search(i);
  CHECK(!r.kan);
  CHECK(r.failure.find("L2") != std::string::npos);
  // the nerve of a group is Kan
  auto s3 = tn_nerve(constant_simplicial_category(symmetric_group_category(3), 3), 3);
  auto k = horn_search(s3);
  CHECK(k.kan);
  CHECK(k.horns > 0);
  // the nerve of a non-groupoid monoid is not
  CHECK(!horn_search(tn_nerve(constant_simplicial_category(idempotent_monoid_category(), 3), 3)).kan);
}

TEST_CASE("hypotheses of the comparison lemma") {
  auto w = check_wn_conditions(constant_simplicial_category(symmetric_group_category(3), 3));
  CHECK(w.homs_kan);
  CHECK(w.groupoid);
  CHECK(!w.caveat.empty());
  auto m = check_wn_conditions(constant_simplicial_category(idempotent_monoid_category(), 3));
  CHECK(!m.groupoid);
  CHECK(m.homs_kan);
  auto e = check_wn_conditions(codiscrete_simplicial_category(chaotic_groupoid(2, {"0", "1"}, {{0, 1}, {1, 0}}), 3));
  CHECK(e.homs_kan);
  CHECK(e.groupoid);
  // Δ[1] under componentwise min: a simplicial monoid whose underlying set is not Kan
  auto c = constant_simplicial_category(trivial_category(), 3);
  auto iv = interval(3);
  c.hom[{0, 0}] = iv;
  for (int n = 0; n <= 3; ++n) {
    std::string top = "(1";
    for (int k = 0; k < n; ++k) top += ",1";
    c.identity[n][0] = iv.find(n, top + ")");
    std::vector<std::vector<int>> table(iv.size(n), std::vector<int>(iv.size(n)));
    for (int g = 0; g < iv.size(n); ++g)
      for (int f = 0; f < iv.size(n); ++f) {
        std::string l = iv.labels[n][g];
        for (std::size_t k = 0; k < l.size(); ++k) l[k] = std::min(l[k], iv.labels[n][f][k]);
        table[g][f] = iv.find(n, l);
      }
    c.compose[n][{0, 0, 0}] = table;
  }
  CHECK(!simplicial_category_violation(c));
  auto nk = check_wn_conditions(c);
  CHECK(!nk.homs_kan);
  CHECK(!nk.groupoid);
}

TEST_CASE("coset enumeration") {
  CHECK(group_order({1, {{1, 1, 1, 1, 1}}}) == 5);
  CHECK(group_order({2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}}) == 6);
  CHECK(group_order({2, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}}}) == 6);
  CHECK(group_order({2, {{1, 1, 1, 1}, {2, 2}, {1, 2, 1, 2}}}) == 8);
  CHECK(group_order({2, {{1, 1}, {2, 2, 2}, {1, 2, -1, -2}}}) == 6);
  CHECK(group_order({1, {{1}}}) == 1);
  CHECK(group_order({0, {}}) == 1);
  CHECK(!group_order({1, {}}, 500));
  auto rep = regular_representation({2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}});
  REQUIRE(rep);
  CHECK(!commute(*rep, 0, 1));
}

TEST_CASE("components and fundamental groups") {
  auto pt = pi0_pi1(constant_simplicial_set({"p"}, 2));
  CHECK(pt.components == 1);
  REQUIRE(pt.pi1);
  CHECK(group_order(*pt.pi1) == 1);
  auto two = pi0_pi1(disjoint_union(constant_simplicial_set({"p"}, 2), constant_simplicial_set({"q"}, 2)));
  CHECK(two.components == 2);
  CHECK(!pi0_pi1(constant_simplicial_set({"p"}, 1)).pi1);

  for (const auto& [g, order] : std::vector<std::pair<FiniteCategory, int>>{
           {symmetric_group_category(3), 6}, {cyclic_group_category(3), 3}, {cyclic_group_category(2), 2}}) {
    auto c = constant_simplicial_category(g, 3);
    for (const auto& s : {tn_nerve(c, 3), wbar_nerve(c, 3)}) {
      auto h = pi0_pi1(s);
      CHECK(h.components == 1);
      REQUIRE(h.pi1);
      auto rep = regular_representation(*h.pi1);
      REQUIRE(rep);
      CHECK(static_cast<int>(rep->front().size()) == order);
      // non-abelian of order 6 is S3
      bool abelian = true;
      for (int a = 0; a < h.pi1->generators; ++a)
        for (int b = 0; b < h.pi1->generators; ++b) abelian = abelian && commute(*rep, a, b);
      CHECK(abelian == (order != 6));
    }
  }
  // E(G) is contractible, so TN of the codiscrete category on a group is simply connected
  auto e = tn_nerve(codiscrete_simplicial_category(cyclic_group_category(2), 2), 2);
  auto he = pi0_pi1(e);
  CHECK(he.components == 1);
  CHECK(group_order(*he.pi1) == 1);
  auto we = pi0_pi1(wbar_nerve(codiscrete_simplicial_category(cyclic_group_category(2), 2), 2));
  CHECK(group_order(*we.pi1) == 1);
}

TEST_CASE("pi is a low-dimensional equivalence under the hypotheses") {
  int checked = 0;
  for (const auto& [name, c] : corpus(3)) {
    INFO(name);
    auto w = check_wn_conditions(c);
    if (!(w.homs_kan && w.groupoid)) continue;
    ++checked;
    auto tn = tn_nerve(c, 3), wb = wbar_nerve(c, 3);
    auto cmp = compare_low_homotopy(tn, wb, pi_map(c, tn, wb));
    CHECK(cmp.pi0_bijective);
    REQUIRE(cmp.pi1_iso);
    CHECK(*cmp.pi1_iso);
    auto back = compare_low_homotopy(wb, tn, rho_map(c, tn, wb));
    CHECK(back.pi0_bijective);
    CHECK(back.pi1_iso == true);
  }
  CHECK(checked == 7);
  // a map that is not an equivalence is detected
  auto c = constant_simplicial_category(cyclic_group_category(2), 2);
  auto tn = tn_nerve(c, 2);
  auto pt = tn_nerve(constant_simplicial_category(trivial_category(), 2), 2);
  SimplicialMap collapse;
  for (int n = 0; n <= 2; ++n) collapse.map.push_back(std::vector<int>(tn.size(n), 0));
  CHECK(!simplicial_map_violation(tn, pt, collapse));
  auto cmp = compare_low_homotopy(tn, pt, collapse);
  CHECK(cmp.pi0_bijective);
  CHECK(cmp.pi1_iso == false);
}

TEST_CASE("gauge simplicial groupoid") {
  // h = x⊗g over k[x]/(x²) with g: u (deg 0) -> v (deg 1), w (deg 1) closed
  SparseMatrix d0(2, 1);
  d0.set(0, 0, 1);
  auto g = catalog::abelian(CochainComplex(GradedSpace({{0, {"u"}}, {1, {"v", "w"}}}), {{0, d0}}));
  auto h = nerve_host(g, ArtinianDgAlgebra{catalog::truncated_polynomial(1)});
  std::vector<Vec> objects{h.zero(), h.basis("x*v"), h.basis("x*w"), h.element({{"x*w", 1}, {"x*v", 2}})};
  auto gg = gauge_simplicial_groupoid(h, objects, 3);
  const auto& c = gg.category;
  CHECK(!simplicial_category_violation(c));
  auto w = check_wn_conditions(c);
  CHECK(w.homs_kan);
  CHECK(w.groupoid);
  // oracle: exp(γ)·x = x − dγ, so hom(x, y) is {γ : dγ = x − y}
  SparseMatrix dh = h.total_differential().select_cols(h.indices_in_degree(0));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      auto sol = solve_affine(dh, sub(objects[x], objects[y]));
      CHECK(c.arrows(x, y).size(0) == (sol ? 1 : 0));
      if (sol) CHECK(sol->kernel.empty());
    }
  auto tn = tn_nerve(c, 3), wb = wbar_nerve(c, 3);
  auto low = pi0_pi1(tn);
  CHECK(low.components == 2);
  CHECK(group_order(*low.pi1) == 1);
  auto cmp = compare_low_homotopy(tn, wb, pi_map(c, tn, wb));
  CHECK(cmp.pi0_bijective);
  CHECK(cmp.pi1_iso == true);

  // transports over Ω_n are constant: a stored arrow fills every horn as a constant form,
  // while a t-dependent perturbation does not transport x to y
  FormHost fh(h);
  PolyFormAlgebra om(2, 2);
  const Vec& t13 = gg.transport.at({1, 0});
  FormVec gamma = fh.constant(2, t13);
  CHECK(gauge_act(fh, gamma, fh.constant(2, objects[1])) == fh.constant(2, objects[0]));
  FormVec bent = fh.add(gamma, fh.tensor(om.t(1), h.basis("x*u")));
  CHECK(gauge_act(fh, bent, fh.constant(2, objects[1])) != fh.constant(2, objects[0]));

  CHECK_THROWS_AS(gauge_simplicial_groupoid(h, {h.basis("x*u")}, 2), ValidationError);
  // non-free action: the abelian line in degree 0 acting trivially
  auto triv = catalog::abelian(CochainComplex(GradedSpace({{0, {"u"}}, {1, {"v"}}}), {}));
  auto ht = nerve_host(triv, ArtinianDgAlgebra{catalog::truncated_polynomial(1)});
  CHECK_THROWS_AS(gauge_simplicial_groupoid(ht, {ht.zero()}, 2), ValidationError);
}
