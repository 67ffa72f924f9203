#pragma once

#include "dgl/coalgebra.hpp"
#include "dgl/lie.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgl {

/// 𝒞(g) truncated to ⊕_{n<=N} S^n(g[1]). |sx| = |x| − 1, d₀(sx) = −s(dx) and
/// d₁ is the coderivation with corestriction sx·sy ↦ (−1)^{|x|} s[x,y].
/// The truncation is a subcoalgebra and a subcomplex, so all axioms hold exactly.
struct ChevalleyCoalgebra {
  DgLieAlgebra lie;
  int bound = 0;
  UnitalCoalgebra coalgebra;
  std::vector<std::vector<int>> monomial;  // per basis index: nondecreasing indices into g
  std::map<std::vector<int>, int> index_of;

  int dim() const { return coalgebra.dim(); }
  int sym_degree(int i) const { return static_cast<int>(monomial[i].size()); }
  /// Basis index of the S¹ element s(x_k).
  int linear(int k) const { return index_of.at({k}); }
};

ChevalleyCoalgebra chevalley_C(const DgLieAlgebra& g, int bound);

/// ℒ(X) truncated at weight W: free Lie algebra on X̄[−1] (generator r is s^-1 of
/// reduced basis vector r, label "s^-1" + label) with d(s^-1 x) = −s^-1(dx) −
/// ½ Σ (−1)^{|a|} [s^-1 a, s^-1 b] over Δ̄x = Σ a⊗b.
struct CobarLie {
  UnitalCoalgebra source;
  int bound = 0;
  ReducedCoalgebra reduced;
  FreeLieTruncated free;

  const DgLieAlgebra& lie() const { return free.lie; }
  int generator(int r) const { return free.generator_index(r); }
};

CobarLie cobar_L(const UnitalCoalgebra& x, int bound);

/// Hom(X̄, g) with (df) = d∘f − (−1)^{|f|} f∘d and [f,h] = μ(f⊗h)Δ̄.
/// Basis element (r, k) maps reduced basis vector r to g basis vector k.
struct Convolution {
  ReducedCoalgebra reduced;
  DgLieAlgebra target;
  DgLieAlgebra lie;
  std::map<std::pair<int, int>, int> index_of;
  std::vector<std::pair<int, int>> pair_of;

  /// τ as a matrix (g.dim × X̄.dim) <-> coordinates in `lie`.
  Vec element(const SparseMatrix& tau) const;
  SparseMatrix matrix(const Vec& f) const;
};

Convolution convolution_lie(const UnitalCoalgebra& x, const DgLieAlgebra& g);

/// dτ + ½[τ,τ] in the convolution algebra; τ is twisting iff this vanishes.
Vec twisting_residual(const Convolution& c, const SparseMatrix& tau);
bool is_twisting(const Convolution& c, const SparseMatrix& tau);

/// Hom(m⊗g) → Hom(A*-bar, g): a⊗x ↦ (−1)^{|a||x| + |a|(|a|+1)/2} (a' ↦ x). A Lie isomorphism.
SparseMatrix artinian_hom_iso(const ArtinianDgAlgebra& a, const DgLieAlgebra& mg, const Convolution& c);

/// Twisting cochain -> coalgebra map X → 𝒞(g): F(x) = ε(x)1 + Σ_n (1/n!) (sτ)^n Δ̄^{n−1}(x̄).
/// Throws ValidationError when a nonzero term needs symmetric degree above the bound.
SparseMatrix coalgebra_map_from_twisting(const UnitalCoalgebra& x, const ChevalleyCoalgebra& c,
                                         const SparseMatrix& tau);
SparseMatrix twisting_from_coalgebra_map(const UnitalCoalgebra& x, const ChevalleyCoalgebra& c,
                                         const SparseMatrix& f);
/// Twisting cochain -> Lie map ℒ(X) → g (brackets respected up to weight W).
SparseMatrix lie_map_from_twisting(const CobarLie& l, const DgLieAlgebra& g, const SparseMatrix& tau);
SparseMatrix twisting_from_lie_map(const CobarLie& l, const DgLieAlgebra& g, const SparseMatrix& f);

struct AdjunctionImages {
  SparseMatrix coalgebra_map;  // 𝒞(g).dim × X.dim
  SparseMatrix lie_map;        // g.dim × ℒ(X).dim
};
AdjunctionImages adjunction_transport(const UnitalCoalgebra& x, const ChevalleyCoalgebra& c, const CobarLie& l,
                                      const SparseMatrix& tau);

/// Morphism check for maps out of a weight truncation: brackets of total weight
/// <= W and d on elements whose differential stays inside the truncation.
Certificate verify_truncated_lie_map(const FreeLieTruncated& l, const DgLieAlgebra& target, const SparseMatrix& f);

/// i_X: X → 𝒞ℒ(X), from the canonical twisting cochain x̄ ↦ s^-1 x̄.
SparseMatrix unit_map(const CobarLie& l, const ChevalleyCoalgebra& cl);
/// q_X: 𝒞ℒ(X) → X, projection to S¹ followed by projection to weight one.
SparseMatrix unit_splitting(const CobarLie& l, const ChevalleyCoalgebra& cl);
/// p_g: ℒ𝒞(g) → g, from the canonical twisting cochain sx ↦ x.
SparseMatrix counit_map(const ChevalleyCoalgebra& c, const CobarLie& lc);
/// ℒ(f) for a coalgebra map f: X → Y, matrix ℒ(Y) × ℒ(X).
SparseMatrix cobar_map(const CobarLie& lx, const CobarLie& ly, const SparseMatrix& f);

/// The reduced complex C̄(g) = ⊕_{1<=n<=N} S^n(g[1]).
CochainComplex chevalley_reduced(const ChevalleyCoalgebra& c);

struct Window {
  int lo = 0;
  int hi = 0;
};
/// Degrees t where H^t of C̄(g) is unaffected by the symmetric truncation, or nullopt
/// when no degree is safe.
std::optional<Window> chevalley_valid_window(const DgLieAlgebra& g, int bound);
/// Cohomology dims of C̄(g) at bound N for degrees in `window`; throws when the
/// window exceeds the valid one, naming it.
std::map<int, int> homology_C_bar(const DgLieAlgebra& g, int bound, Window window);
/// For a weight-truncated semi-free algebra: C̄ restricted to total weight <= W.
/// Its cohomology equals that of Ab(g)[1] in every degree.
CochainComplex chevalley_weight_truncated(const FreeLieTruncated& l);
std::map<int, int> homology_C_bar(const FreeLieTruncated& l);

/// g/[g,g] with the induced differential.
CochainComplex abelianization(const DgLieAlgebra& g);
/// Generators with the weight-one part of the differential.
CochainComplex abelianization(const FreeLieTruncated& l);

/// Generators e,f,h (deg 0), x,y,z (deg −1), dx = [h,e] − 2e, dy = [h,f] + 2f,
/// dz = [e,f] − h, truncated at weight W, with the surjection onto sl₂.
struct Sl2Counterexample {
  FreeLieTruncated presentation;
  DgLieAlgebra sl2;
  SparseMatrix surjection;  // sl2.dim × presentation.dim
};
Sl2Counterexample sl2_example(int max_weight = 3);

}  // namespace dgl
