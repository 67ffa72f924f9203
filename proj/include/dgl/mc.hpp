#pragma once

#include "dgl/coalgebra.hpp"
#include "dgl/forms.hpp"
#include "dgl/lie.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dgl {

template <class E>
struct DgOps : LieOps<E> {
  std::function<E(const E&)> d;
};

DgOps<Vec> dg_ops(const DgLieAlgebra& g);
DgOps<FormVec> dg_ops(const FormHost& h);

/// Time-1 flow of ρ(y)(x) = dy + [x, y] from x, by Picard iteration in an
/// auxiliary time s: x(s) = Σ s^j c_j with c_0 = x, c_1 = dy + [x, y] and
/// (j+1) c_{j+1} = [c_j, y]. Stops when a term vanishes; throws after max_terms.
template <class E>
E gauge_flow(const DgOps<E>& ops, const E& y, const E& x, int max_terms, int* terms_used = nullptr) {
  E out = x;
  E term = ops.add(ops.d(y), ops.bracket(x, y));
  int j = 1;
  while (!ops.is_zero(term)) {
    if (j > max_terms) throw ValidationError("gauge flow did not terminate; host not nilpotent?");
    out = ops.add(out, term);
    term = ops.scale(Rational(1, j + 1), ops.bracket(term, y));
    ++j;
  }
  if (terms_used) *terms_used = j;
  return out;
}

struct McCheck {
  bool ok = false;
  Vec residual;
};

McCheck mc_check(const DgLieAlgebra& g, const Vec& x);

/// Throws unless g is nilpotent; returns the nilpotency index.
int require_nilpotent(const DgLieAlgebra& g);

Vec gauge_act(const DgLieAlgebra& g, const GaugeElement& e, const Vec& x);
FormVec gauge_act(const FormHost& h, const FormVec& y, const FormVec& x);

/// The logarithm c with exp(c)·x = exp(a)·(exp(b)·x). With the flow
/// convention this is bch(b, a).
GaugeElement gauge_compose(const DgLieAlgebra& g, const GaugeElement& a, const GaugeElement& b);
FormVec gauge_compose(const FormHost& h, const FormVec& a, const FormVec& b);

// ---- equivalence ----

struct GaugeDecision {
  enum class Kind { Witness, Obstruction, Unknown };
  Kind kind = Kind::Unknown;
  int stage = 0;              // obstruction or give-up stage
  GaugeElement witness;       // valid for Witness
  bool exhaustive = false;    // every parameter choice was kept through all stages
  /// With exhaustive witnesses: all logarithms y with exp(y)·x = x′.
  std::optional<AffineSolution> family;
  /// With obstructions: the inconsistent system (matrix, rhs) at `stage`.
  SparseMatrix obstruction_matrix;
  Vec obstruction_rhs;
  std::string note;
};

std::string to_string(GaugeDecision::Kind k);

/// Staged affine solving along the lower central series of the host (which
/// refines the m-adic layers for m⊗g). Never returns an uncertified answer.
GaugeDecision gauge_equiv_decide(const DgLieAlgebra& h, const Vec& x, const Vec& x2, int depth);

struct DeligneGroupoid {
  std::vector<Vec> objects;
  std::map<std::pair<int, int>, GaugeDecision> hom;
  int components_lower = 0;  // merging unknown pairs as well
  int components_upper = 0;  // merging witnessed pairs only
  std::vector<int> component;  // witnessed classes
  bool exact() const { return components_lower == components_upper; }
};

DeligneGroupoid deligne_groupoid(const DgLieAlgebra& h, const std::vector<Vec>& sample, int depth = 64);

// ---- paths and simplices ----

struct PathSolution {
  FormVec z;       // x(t) + dt∧y(t) in Ω_1⊗g
  FormVec x;       // x(t)
  int iterations = 0;
};

/// Solves dx/dt = dy + [x, y], x(0) = x0 by Picard iteration. y must be a
/// degree-0 element of g[t] (one variable, no dt).
PathSolution path_solve(const FormHost& h, const Vec& x0, const FormVec& y, int cap);

/// Unique presentation z = exp(η_n)·(…exp(η_1)·x0) with η_i ∈ k_i.
struct McDecomposition {
  std::vector<FormVec> eta;  // η_1..η_n, in n variables
  Vec x0;
};

FormVec mc_compose(const FormHost& h, int n, const std::vector<FormVec>& eta, const Vec& x0);
McDecomposition mc_decompose(const FormHost& h, int n, const FormVec& z);

/// Membership in k_i = t_i·(Ω_{i−1}⊗H)^0[t_i] inside Ω_n⊗H.
bool in_k(const FormHost& h, int i, const FormVec& eta);
/// Basis of k_i with polynomial degree <= cap, as elements of Ω_n⊗H.
std::vector<FormVec> k_basis(const FormHost& h, int n, int i, int cap);
/// Logarithm of the T_n element exp(η_n)⋯exp(η_1) acting as in mc_compose.
FormVec gauge_log(const FormHost& h, const std::vector<FormVec>& eta);

struct CrossSection {
  FormVec gauge;  // logarithm in (Ω_n⊗H)^0
  Vec x0;
};
CrossSection pseudo_cross_section(const FormHost& h, int n, const FormVec& z);

/// First failing simplicial identity on a simplex of level n, if any.
std::optional<std::string> simplicial_identity_violation(const FormHost& h, int n, int cap, const FormVec& z);

/// Σ_n for a nilpotent host H (m⊗g, or g itself).
struct NerveSimplexSet {
  FormHost host;
  int level = 0;
  int cap = 0;
  std::vector<FormVec> simplices;

  /// dim k_i within the cap, i = 1..level.
  std::vector<int> parameter_dims() const;
  FormVec face(int i, const FormVec& z) const;
  FormVec degeneracy(int i, const FormVec& z) const;
  /// Checks MC, the cap and the simplicial identities on every materialized simplex.
  Certificate verify() const;
};

DgLieAlgebra nerve_host(const DgLieAlgebra& g, const ArtinianDgAlgebra& a);
NerveSimplexSet nerve(const DgLieAlgebra& g, const ArtinianDgAlgebra& a, int n, int cap);

struct Pi0Report {
  int lower = 0;
  int upper = 0;
  bool exact() const { return lower == upper; }
  DeligneGroupoid groupoid;
};
Pi0Report nerve_pi0(const DgLieAlgebra& host, const std::vector<Vec>& sample, int depth = 64);

// ---- horns ----

/// Fills the horn Λ^n_k given faces i ≠ k (in n−1 variables). Staged along
/// the lower central series of H, with polynomial degree at most max_cap for
/// the unknowns. nullopt means no filler was found within the cap.
std::optional<FormVec> fill_horn(const FormHost& h, int n, int k, const std::map<int, FormVec>& faces, int max_cap);

/// Lifts against Σ(g) → Σ(h) induced by a surjection f (h × g): a filler of
/// the horn in Σ(g) whose image is `target`.
std::optional<FormVec> lift_horn(const FormHost& source, const FormHost& target, const SparseMatrix& f, int n, int k,
                                 const std::map<int, FormVec>& faces, const FormVec& image, int max_cap);

/// Applies a linear map on the H-coordinates.
FormVec map_coefficients(const FormVec& z, const SparseMatrix& m);

struct KanReport {
  bool ok = true;
  int horns = 0;
  int filled = 0;
  bool bounded = true;  // the search was limited by the cap
  std::string failure;
};

/// Fills every horn obtained by dropping one face of each given simplex (levels 1..3).
KanReport kan_check(const FormHost& h, int n, const std::vector<FormVec>& simplices, int max_cap);

// ---- sampling ----

/// A random Maurer-Cartan element of a nilpotent algebra: a cocycle in the last
/// nonzero lower-central term, moved by a random gauge.
Vec sample_mc(const DgLieAlgebra& h, std::mt19937& rng);
/// A random simplex of Σ_n within the cap, composed from random k_i elements.
FormVec sample_simplex(const FormHost& h, int n, int cap, std::mt19937& rng);

}  // namespace dgl
