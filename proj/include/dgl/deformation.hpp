#pragma once

#include "dgl/coalgebra.hpp"
#include "dgl/mc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dgl {

/// A_n = k[ε]/(ε²), deg ε = −n (labels "1", "eps").
ArtinianDgAlgebra dual_numbers(int n);

struct DualNumbersHomotopy {
  int n = 0;
  int levels = 0;
  int cap = 0;
  std::vector<long> level_dims;  // dim Σ_k at the cap, k = 0..levels+1
  std::vector<int> nerve_pi;     // from the normalized Moore complex of the nerve
  std::vector<int> oracle_pi;    // Dold–Kan on τ^{≤0}(g[1+n])
  bool agree() const { return nerve_pi == oracle_pi; }
};

/// π_i(Σ_g(A_n)) for 0 <= i <= levels, two ways. The nerve is levelwise the
/// vector space of cocycles of degree 1 in Ω_k ⊗ m⊗g (m² = 0), polynomial degree <= cap.
DualNumbersHomotopy dual_numbers_homotopy(const DgLieAlgebra& g, int n, int levels, int cap);

struct FormalSpaceReport {
  bool formal = true;
  std::vector<int> obstructing_degrees;  // i <= 0 with H^i(g) ≠ 0
  std::vector<int> nerve_pi;             // π_i(Σ_g(k[ε]/ε²)), i = 0..1−min degree
  bool consistent = true;                // formal iff π_{>0} of the nerve vanish
  std::optional<FormVec> loop;           // a 1-simplex ε·dt⊗y, y a non-exact 0-cocycle
};

FormalSpaceReport formal_space_test(const DgLieAlgebra& g);

using Monomial = std::vector<int>;
using Polynomial = std::map<Monomial, Rational>;

std::string to_string(const Polynomial& p, const std::vector<std::string>& vars);

struct PointCount {
  bool exact = true;
  bool finite = true;
  long count = 0;     // when finite and exact
  int dimension = 0;  // when infinite: the dimension of the (linear) solution space
  long lower = 0;     // bounds when not exact
  long upper = 0;
  std::string note;
};

std::string to_string(const PointCount& c);

/// MC elements of a finite host when they can be listed or described linearly.
struct McPoints {
  bool supported = true;
  bool finite = true;
  std::vector<Vec> points;  // when finite
  int dimension = 0;        // affine dimension otherwise
};

McPoints mc_points(const DgLieAlgebra& host);

/// π₀(Σ_g(A)) for classical A, through mc_points and the Deligne groupoid.
PointCount classical_part(const DgLieAlgebra& g, const ArtinianDgAlgebra& a, int depth = 64);
/// The same with g hosted directly (g nilpotent).
PointCount classical_part_direct(const DgLieAlgebra& g, int depth = 64);

struct OneTruncation {
  DgLieAlgebra source;
  DgLieAlgebra h;
  SparseMatrix inclusion;  // source × h
  std::vector<Vec> complement;
  int rank_d0 = 0;
};

/// h^{<=0} = 0, h^1 = V, h^{>1} = g^{>1}. V defaults to the greedy complement
/// of im(d: g⁰ → g¹) among the basis vectors of g¹.
OneTruncation one_truncation(const DgLieAlgebra& g, const std::optional<std::vector<Vec>>& v = std::nullopt);

struct HullPresentation {
  std::vector<std::string> generators;  // coordinates on h¹
  std::vector<Polynomial> relations;    // one per basis vector of h²
  int order = 0;
};

/// The dual algebra of H⁰(𝒞(h)) to order N, read off the Chevalley differential.
HullPresentation hull_presentation(const OneTruncation& t, int order);

/// Points with coordinates in m_A (A classical, m² = 0) or, with no algebra,
/// the k-points of the relations.
PointCount hull_points(const HullPresentation& p, const ArtinianDgAlgebra& a);
PointCount hull_points_over_k(const HullPresentation& p);

/// Rational roots of a univariate polynomial (coefficients by power).
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs);

struct TorResult {
  std::vector<int> dims;  // dim Tor_i, i = 0..bound
  std::vector<int> quotient_dims;  // dim C/I, dim C/J
};

/// Tor^C_i(C/I, C/J) for C = k[u_1..u_r] and I, J generated by regular
/// sequences of length r with finite-dimensional quotients, via the Koszul
/// resolution of C/I tensored with C/J. Other inputs are rejected.
TorResult tor_intersection(int variables, const std::vector<Polynomial>& i, const std::vector<Polynomial>& j, int bound);

struct QuotientReport {
  DeligneGroupoid semidirect;  // classes in Σ_{g⋉h}(A)
  DeligneGroupoid fibre;       // classes in Σ_h(A)
  int orbit_classes = 0;       // classes of π₀(Σ_h(A)) modulo the witnessed exp(m⊗g⁰) moves
  bool resolved = true;
  bool agree = true;
  std::vector<std::string> notes;
};

/// Compares π₀(Σ_{g⋉h}(A)) with exp(m⊗g⁰)-orbits on π₀(Σ_h(A)) over a sample of MC(m⊗h).
QuotientReport quotient_nerve_compare(const DgLieAlgebra& g, const DgLieAlgebra& h, const std::vector<SparseMatrix>& action,
                                      const ArtinianDgAlgebra& a, const std::vector<Vec>& sample, int depth = 64);

struct TorsorNerveReport {
  DgLieAlgebra host;                         // m ⊗ B ⊗ g
  std::vector<std::vector<int>> level_dims;  // per level: dim k_i within the cap
  PointCount pi0;
};

TorsorNerveReport trivial_torsor_nerve(const Cdga& b, const DgLieAlgebra& g, const ArtinianDgAlgebra& a, int levels,
                                       int cap);

}  // namespace dgl
