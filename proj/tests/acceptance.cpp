// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.
#include "dgl/commands.hpp"
#include "dgl/enveloping.hpp"
#include "dgl/quillen.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace dgl;
using namespace dgl::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

DgLieAlgebra tangent(const DgLieAlgebra& g) { return tensor_cdga_lie(catalog::truncated_polynomial(1, 1), g); }

SparseMatrix label_projection(const DgLieAlgebra& g, const DgLieAlgebra& h) {
  SparseMatrix f(h.dim(), g.dim());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j)
      if (h.label(j) == g.label(i)) f.set(j, i, 1);
  return f;
}

ArtinianDgAlgebra as_artinian(const Cdga& a) {
  return a.space().find("1") ? ArtinianDgAlgebra(a) : ArtinianDgAlgebra(a, "1*1");
}

// 1. The sl2 counterexample, through the library and through the driver.
Outcome counterexample() {
  Outcome o;
  auto ex = sl2_example(3);
  auto ab = abelianization(ex.presentation);
  const auto& s = ab.space();
  auto pos = [&](const std::string& l) { return s.find(l)->second; };
  SparseMatrix expect(3, 3);
  expect.set(pos("e"), pos("x"), -2);
  expect.set(pos("f"), pos("y"), 2);
  expect.set(pos("h"), pos("z"), -1);
  o.require(ab.diff(-1) == expect, "abelianization differential");
  o.require(cohomology_at(ab, -1).dim == 0 && cohomology_at(ab, 0).dim == 0, "H^-1 or H^0 nonzero");
  o.require(verify_truncated_lie_map(ex.presentation, ex.sl2, ex.surjection).ok, "not a dg Lie map");
  const auto& lie = ex.presentation.lie;
  std::vector<Vec> cycles;
  for (int g = 3; g < 6; ++g) {
    Vec v = unit_vec(lie.dim(), ex.presentation.generator_index(g));
    o.require(is_zero(lie.d(v)), "e, f, h not cycles");
    cycles.push_back(v);
  }
  o.require(rank(ex.surjection * SparseMatrix::from_columns(lie.dim(), cycles)) == 3, "not onto sl2");
  auto rec = run_operation(parse_object_file("{}"), {{"op", "counterexample-sl2"}}, {});
  o.require(rec.status == Status::Ok, "driver record not ok");
  return o;
}

// 2. Adjunction round trips on random (A*, g).
Outcome adjunction() {
  Outcome o;
  std::mt19937 rng(2024);
  std::vector<Cdga> pool = {catalog::truncated_polynomial(1),     catalog::truncated_polynomial(2),
                            catalog::truncated_polynomial(3),     catalog::truncated_polynomial(1, -1),
                            catalog::truncated_polynomial(2, -2), catalog::koszul_truncated(1)};
  int pairs = 0, nonzero = 0;
  while (pairs < 30) {
    const Cdga& a = pool[std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()) - 1)(rng)];
    if (a.dim() > 5) continue;
    auto art = as_artinian(a);
    auto g = random_dgla(rng, 5);
    auto x = dual_artinian(art);
    auto conv = convolution_lie(x, g);
    auto mg = tensor_cdga_lie(art.maximal_ideal(), g);
    SparseMatrix tau = conv.matrix(artinian_hom_iso(art, mg, conv).apply(sample_mc(mg, rng)));
    o.require(is_zero(twisting_residual(conv, tau)), "sampled cochain is not twisting");
    nonzero += !tau.is_zero();
    int len = filtration_length(x);
    auto c = chevalley_C(g, len);
    auto l = cobar_L(x, std::max(len, 1));
    auto maps = adjunction_transport(x, c, l, tau);
    o.require(verify_coalgebra_map(x, c.coalgebra, maps.coalgebra_map).ok, "coalgebra map fails");
    o.require(verify_truncated_lie_map(l.free, g, maps.lie_map).ok, "Lie map fails");
    SparseMatrix back_c = twisting_from_coalgebra_map(x, c, maps.coalgebra_map);
    SparseMatrix back_l = twisting_from_lie_map(l, g, maps.lie_map);
    o.require(back_c == tau && back_l == tau, "round trip from the twisting cochain");
    o.require(is_zero(twisting_residual(conv, back_c)) && is_zero(twisting_residual(conv, back_l)), "transported residual");
    o.require(coalgebra_map_from_twisting(x, c, back_c) == maps.coalgebra_map && lie_map_from_twisting(l, g, back_l) == maps.lie_map,
              "round trip from the maps");
    ++pairs;
  }
  o.require(nonzero >= 5, "too few nonzero twisting cochains");
  o.detail = o.ok ? std::to_string(pairs) + " pairs, " + std::to_string(nonzero) + " nonzero" : o.detail;
  return o;
}

// 3. Dual-number nerves against cohomology.
Outcome dual_numbers_criterion() {
  Outcome o;
  std::mt19937 rng(99);
  std::vector<DgLieAlgebra> corpus = {catalog::line(1), catalog::sl2(), catalog::ac_algebra(), catalog::heisenberg(),
                                      catalog::upper_triangular4()};
  while (corpus.size() < 12) corpus.push_back(random_dgla(rng, 6));
  for (const auto& g : corpus)
    for (int n = 0; n <= 2; ++n) {
      auto r = dual_numbers_homotopy(g, n, 1, 2);
      o.require(r.nerve_pi[0] == cohomology_at(g.complex(), 1 + n).dim, "pi0 != dim H^{1+n}");
      o.require(r.nerve_pi[1] == cohomology_at(g.complex(), n).dim, "pi1 != dim H^n");
    }
  o.detail = o.ok ? std::to_string(corpus.size()) + " algebras" : o.detail;
  return o;
}

// 4. Unique decomposition of nerve simplices.
Outcome decomposition() {
  Outcome o;
  std::mt19937 rng(21);
  std::vector<DgLieAlgebra> hosts = {catalog::ac_algebra(), tensor_cdga_lie(catalog::truncated_polynomial(1, -1), catalog::ac_algebra()),
                                     tangent(catalog::heisenberg()),
                                     tensor_cdga_lie(catalog::truncated_polynomial_ideal(2), tangent(catalog::sl2()))};
  int checked = 0, nonconstant = 0;
  for (const auto& g : hosts) {
    FormHost h(g);
    for (int n = 1; n <= 2; ++n)
      for (int trial = 0; trial < 15; ++trial) {
        std::vector<FormVec> eta;
        for (int i = 1; i <= n; ++i) {
          auto basis = k_basis(h, n, i, 2);
          FormVec e;
          for (const auto& b : basis) e = h.add(e, h.scale(std::uniform_int_distribution<int>(-1, 1)(rng), b));
          eta.push_back(e);
        }
        Vec x0 = sample_mc(g, rng);
        FormVec z = mc_compose(h, n, eta, x0);
        o.require(h.is_mc(z) && mc_check(g, x0).ok, "composed element is not MC");
        auto dec = mc_decompose(h, n, z);
        o.require(dec.x0 == x0 && dec.eta == eta, "decompose o compose != id");
        o.require(mc_compose(h, n, dec.eta, dec.x0) == z, "compose o decompose != id");
        nonconstant += z != h.constant(n, x0);
        ++checked;
      }
  }
  o.detail = o.ok ? std::to_string(checked) + " simplices, " + std::to_string(nonconstant) + " nonconstant" : o.detail;
  o.require(checked >= 50 && nonconstant > 0, "too few samples");
  return o;
}

// 5. Filtered PBW for the Heisenberg algebra.
Outcome pbw() {
  Outcome o;
  const int w = 4;
  auto heis = catalog::heisenberg();
  o.require(symmetrization_map(heis, w).filtered_bijective, "symmetrization not bijective");
  auto lb = lcs_rebase(heis);
  auto lhs = filtered_word_spans(lb.lie, lb.weight, w, w);
  auto rhs = filtered_word_spans(associated_graded_lie(lb.lie, lb.weight), lb.weight, w, w);
  o.require(lhs == rhs, "gr U(g) != U(gr g)");
  // PBW monomials x^i y^j z^k, weights 1, 1, 2
  for (int p = 0; p <= w; ++p)
    for (int l = 0; l <= w; ++l) {
      int count = 0;
      for (int i = 0; i <= l; ++i)
        for (int j = 0; i + j <= l; ++j)
          for (int k = 0; i + j + k <= l; ++k) count += i + j + 2 * k <= p;
      o.require(lhs[p][l] == count, "PBW count");
    }
  return o;
}

// 6. Rees functor identities.
Outcome rees_identities() {
  Outcome o;
  std::mt19937 rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    auto x = random_filtered(rng, -1, 1, 3, "x");
    auto y = random_filtered(rng, -1, 1, 2, "y");
    auto rx = rees(x), ry = rees(y), rt = rees(tensor_filtered(x, y));
    o.require(rx.torsion_free() && ry.torsion_free() && rt.torsion_free(), "torsion");
    o.require(phi(rx) == x && phi(ry) == y, "phi o rho != id");
    auto dims = tensor_over_r_dims(rx, ry, 7);
    for (int wt = 0; wt <= 7; ++wt)
      for (int d = -2; d <= 2; ++d) {
        auto it = dims.find({wt, d});
        o.require(rt.dim(wt, d) == (it == dims.end() ? 0 : it->second), "rho(X (x) Y) dims");
      }
  }
  return o;
}

// 7. C-bar cohomology against the abelianization.
Outcome abelianization_homology() {
  Outcome o;
  std::vector<FreeLieTruncated> ls{sl2_example(2).presentation, sl2_example(3).presentation};
  {
    auto f = free_lie(GradedSpace({{-1, {"x"}}, {0, {"y"}}}), 3);
    int n = f.lie.dim();
    ls.push_back(f.with_differential({unit_vec(n, f.generator_index(1)), zero_vec(n)}));
    Vec y = unit_vec(n, f.generator_index(1));
    ls.push_back(f.with_differential({f.lie.bracket(y, y), zero_vec(n)}));
  }
  {
    auto f = free_lie(GradedSpace({{-1, {"z"}}, {0, {"a", "b"}}}), 3);
    int n = f.lie.dim();
    Vec a = unit_vec(n, f.generator_index(1)), b = unit_vec(n, f.generator_index(2));
    ls.push_back(f.with_differential({add(f.lie.bracket(a, b), a), zero_vec(n), zero_vec(n)}));
  }
  ls.push_back(free_lie(GradedSpace::single(1, {"p", "q"}), 3));
  for (const auto& l : ls) {
    auto h = homology_C_bar(l);
    auto expect = cohomology_dims(shift(abelianization(l), 1));
    for (const auto& [d, k] : h) o.require(k == (expect.count(d) ? expect[d] : 0), "C-bar vs abelianization");
    for (const auto& [d, k] : expect) o.require(k == (h.count(d) ? h[d] : 0), "abelianization vs C-bar");
  }
  o.detail = o.ok ? std::to_string(ls.size()) + " presentations" : o.detail;
  return o;
}

// 8. Hull of the (a,c) algebra.
Outcome hull() {
  Outcome o;
  auto ac = catalog::ac_algebra();
  auto p = hull_presentation(one_truncation(ac), 2);
  o.require(p.generators.size() == 1 && p.relations.size() == 1, "shape");
  o.require(p.relations[0] == Polynomial{{{1}, 1}, {{2}, frac(1, 2)}}, "relation != a + a^2/2");
  auto over_k = hull_points_over_k(p);
  auto direct = classical_part_direct(ac);
  o.require(over_k.exact && direct.exact && over_k.count == 2 && direct.count == 2, "k-points != 2");
  auto eps = dual_numbers(0);
  auto he = hull_points(p, eps), ce = classical_part(ac, eps);
  o.require(he.exact && ce.exact && he.count == ce.count, "k[e]/(e^2) counts differ");
  o.detail = "k: 2, k[e]/(e^2): " + std::to_string(he.count) + " vs " + std::to_string(ce.count);
  return o;
}

// Group generated by permutations: order, involutions, commutativity.
struct PermGroup {
  int order = 0, involutions = 0;
  bool abelian = true;
};
PermGroup closure(const std::vector<std::vector<int>>& gens) {
  int n = static_cast<int>(gens[0].size());
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> queue{id};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& g : gens) {
      std::vector<int> h(n);
      for (int i = 0; i < n; ++i) h[i] = g[queue[q][i]];
      if (seen.insert(h).second) queue.push_back(h);
    }
  PermGroup out;
  out.order = static_cast<int>(seen.size());
  for (const auto& a : seen) {
    std::vector<int> sq(n);
    for (int i = 0; i < n; ++i) sq[i] = a[a[i]];
    out.involutions += sq == id && a != id;
    for (const auto& b : seen)
      for (int i = 0; i < n; ++i)
        if (a[b[i]] != b[a[i]]) out.abelian = false;
  }
  return out;
}

// 9. Nerves of simplicial categories.
Outcome nerves() {
  Outcome o;
  std::vector<std::pair<std::string, SimplicialCategory>> corpus = {
      {"trivial", constant_simplicial_category(trivial_category(), 3)},
      {"Z2", constant_simplicial_category(cyclic_group_category(2), 3)},
      {"Z3", constant_simplicial_category(cyclic_group_category(3), 3)},
      {"S3", constant_simplicial_category(symmetric_group_category(3), 3)},
      {"E(Z2)", codiscrete_simplicial_category(cyclic_group_category(2), 3)},
      {"chaotic2(Z2)", constant_simplicial_category(chaotic_groupoid(2, {"0", "1"}, {{0, 1}, {1, 0}}), 3)},
      {"E(chaotic2(Z2))", codiscrete_simplicial_category(chaotic_groupoid(2, {"0", "1"}, {{0, 1}, {1, 0}}), 3)},
      {"monoid", constant_simplicial_category(idempotent_monoid_category(), 3)},
      {"E(monoid)", codiscrete_simplicial_category(idempotent_monoid_category(), 3)},
  };
  for (const auto& [name, c] : corpus)
    for (int levels = 0; levels <= 3; ++levels) {
      auto tn = tn_nerve(c, levels), wb = wbar_nerve(c, levels);
      auto pi = pi_map(c, tn, wb), rho = rho_map(c, tn, wb);
      o.require(!simplicial_map_violation(tn, wb, pi), name + ": pi not simplicial");
      o.require(is_identity(compose_maps(pi, rho)), name + ": pi o rho != id");
    }
  const auto& s3 = corpus[3].second;
  auto tn = tn_nerve(s3, 3), wb = wbar_nerve(s3, 3);
  for (const auto* s : {&tn, &wb}) {
    auto h = pi0_pi1(*s);
    o.require(h.components == 1, "S3: pi0 != 1");
    auto rep = h.pi1 ? regular_representation(*h.pi1) : std::nullopt;
    o.require(rep.has_value(), "S3: pi1 not enumerated");
    if (!rep) continue;
    // order 6, non-abelian, three involutions: S3
    auto g = closure(*rep);
    o.require(g.order == 6 && !g.abelian && g.involutions == 3, "S3: pi1 not S3");
  }
  auto cmp = compare_low_homotopy(tn, wb, pi_map(s3, tn, wb));
  o.require(cmp.pi0_bijective && cmp.pi1_iso == true, "S3: pi not an isomorphism");
  return o;
}

// 10. Tor of intersections.
Outcome tor() {
  Outcome o;
  auto P = [](std::initializer_list<std::pair<Monomial, Rational>> terms) {
    Polynomial p;
    for (const auto& [m, c] : terms) p[m] = c;
    return p;
  };
  Polynomial u2 = P({{{2}, 1}}), u1 = P({{{1}, 1}, {{0}, -1}});
  o.require(tor_intersection(1, {u2}, {u2}, 4).dims == std::vector<int>{2, 2, 0, 0, 0}, "(2, 2, 0, ...)");
  o.require(tor_intersection(1, {u2}, {u1}, 4).dims == std::vector<int>{0, 0, 0, 0, 0}, "transversal");
  std::vector<std::vector<Polynomial>> one{{P({{{1}, 1}})}, {u2}, {u1}, {P({{{2}, 1}, {{1}, -1}})}, {P({{{3}, 1}, {{1}, -1}})},
                                           {P({{{1}, 1}, {{0}, 1}})}};
  std::vector<std::vector<Polynomial>> two{{P({{{2, 0}, 1}}), P({{{0, 2}, 1}})},
                                           {P({{{1, 0}, 1}}), P({{{0, 1}, 1}})},
                                           {P({{{2, 0}, 1}, {{0, 1}, -1}}), P({{{0, 2}, 1}, {{1, 0}, -1}})},
                                           {P({{{1, 0}, 1}, {{0, 1}, -1}}), P({{{0, 2}, 1}})},
                                           {P({{{1, 0}, 1}, {{0, 0}, -1}}), P({{{0, 1}, 1}})}};
  int pairs = 0;
  for (int r : {1, 2}) {
    const auto& corpus = r == 1 ? one : two;
    for (const auto& a : corpus)
      for (const auto& b : corpus) {
        o.require(tor_intersection(r, a, b, 3).dims == tor_intersection(r, b, a, 3).dims, "asymmetric");
        ++pairs;
      }
  }
  o.detail = o.ok ? std::to_string(pairs) + " ordered pairs symmetric" : o.detail;
  return o;
}

// 11. Horn filling and lifting.
Outcome kan() {
  Outcome o;
  std::mt19937 rng(17);
  std::vector<std::pair<DgLieAlgebra, ArtinianDgAlgebra>> fills = {
      {catalog::ac_algebra(), ArtinianDgAlgebra(catalog::truncated_polynomial(1))},
      {catalog::heisenberg(), dual_numbers(1)},
      {tangent(catalog::heisenberg()), ArtinianDgAlgebra(catalog::truncated_polynomial(1))},
      {tangent(catalog::sl2()), ArtinianDgAlgebra(catalog::truncated_polynomial(2))},
      {catalog::ac_algebra(), dual_numbers(1)},
      {tangent(catalog::upper_triangular4()), ArtinianDgAlgebra(catalog::truncated_polynomial(1))}};
  int horns = 0;
  for (const auto& [g, a] : fills) {
    FormHost h(nerve_host(g, a));
    for (int n = 1; n <= 2; ++n) {
      std::vector<FormVec> zs;
      for (int t = 0; t < 3; ++t) zs.push_back(sample_simplex(h, n, 2, rng));
      auto r = kan_check(h, n, zs, 10);
      o.require(r.ok && r.filled == r.horns, "horn not filled: " + r.failure);
      horns += r.horns;
    }
  }
  auto ab2 = direct_sum(catalog::line(0, "a"), catalog::line(0, "b"));
  auto sl2t = tangent(catalog::sl2());
  std::vector<std::pair<DgLieAlgebra, DgLieAlgebra>> cases = {
      {catalog::heisenberg(), ab2},
      {tensor_cdga_lie(catalog::truncated_polynomial_ideal(2), sl2t), tensor_cdga_lie(catalog::truncated_polynomial_ideal(1), sl2t)},
      {direct_sum(tangent(catalog::heisenberg()), catalog::ac_algebra()), catalog::ac_algebra()}};
  int lifts = 0;
  for (const auto& [gs, gt] : cases) {
    SparseMatrix f = label_projection(gs, gt);
    o.require(verify_lie_map(gs, gt, f).ok && rank(f) == gt.dim(), "not a surjection");
    FormHost src(gs), tgt(gt);
    for (int n = 1; n <= 2; ++n) {
      FormVec z = sample_simplex(src, n, 2, rng);
      PolyFormAlgebra om(n, 16);
      for (int k = 0; k <= n; ++k) {
        std::map<int, FormVec> faces, image_faces;
        for (int i = 0; i <= n; ++i)
          if (i != k) {
            faces[i] = src.face(om, i, z);
            image_faces[i] = map_coefficients(faces[i], f);
          }
        auto w = fill_horn(tgt, n, k, image_faces, 10);
        o.require(w.has_value(), "no filler downstairs");
        if (!w) continue;
        auto lift = lift_horn(src, tgt, f, n, k, faces, *w, 10);
        o.require(lift && src.is_mc(*lift) && map_coefficients(*lift, f) == *w, "lift failed");
        if (lift)
          for (const auto& [i, face] : faces) o.require(src.face(om, i, *lift) == face, "lift has wrong faces");
        ++lifts;
      }
    }
  }
  o.detail = o.ok ? std::to_string(horns) + " horns filled, " + std::to_string(lifts) + " lifts" : o.detail;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"counterexample-sl2: acyclic abelianization, surjection onto sl2", 1, counterexample},
      {"adjunction round trips on random (A*, g)", 30, adjunction},
      {"dual-number nerves match cohomology", 120, dual_numbers_criterion},
      {"MC simplices decompose uniquely", 60, decomposition},
      {"filtered PBW and gr U for Heisenberg", 10, pbw},
      {"Rees identities", 10, rees_identities},
      {"C-bar cohomology equals abelianization cohomology", 60, abelianization_homology},
      {"hull of the (a,c) algebra", 5, hull},
      {"TN and W-bar nerves", 30, nerves},
      {"Tor of intersections", 5, tor},
      {"horn filling and lifting", 120, kan},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget) {
      o.ok = false;
      o.detail = "over the time budget";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << c.name << " (" << secs << " s";
    if (!o.detail.empty()) line << "; " << o.detail;
    line << ")";
    std::cout << line.str() << std::endl;
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
