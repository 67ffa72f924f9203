#pragma once

#include "dgl/cdga.hpp"
#include "dgl/filtered.hpp"
#include "dgl/lie.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dgl {

using Tensor2 = std::map<std::pair<int, int>, Rational>;  // Σ c·e_a⊗e_b, global indices

/// Cocommutative dg coalgebra with a distinguished group-like element. The
/// constructor only checks shapes; verify_coalgebra checks the axioms.
class UnitalCoalgebra {
public:
  UnitalCoalgebra() = default;
  UnitalCoalgebra(CochainComplex complex, std::vector<Tensor2> delta, Vec counit, std::string unit_label = "1");

  static UnitalCoalgebra ground();  // k·1

  const CochainComplex& complex() const { return complex_; }
  const GradedSpace& space() const { return complex_.space(); }
  int dim() const { return space().total_dim(); }
  int degree(int i) const { return space().degree_of(i); }
  int unit() const { return unit_; }
  const std::string& unit_label() const { return unit_label_; }
  const Vec& counit() const { return counit_; }
  const Tensor2& delta(int i) const { return delta_[i]; }
  const std::vector<Tensor2>& deltas() const { return delta_; }
  Tensor2 coproduct(const Vec& x) const;
  Vec d(const Vec& x) const { return total_d_.apply(x); }
  const SparseMatrix& total_differential() const { return total_d_; }
  int index(const std::string& label) const;

private:
  CochainComplex complex_;
  std::vector<Tensor2> delta_;
  Vec counit_;
  std::string unit_label_;
  int unit_ = -1;
  SparseMatrix total_d_;
};

/// Coassociativity, cocommutativity, counit, coderivation, group-like unit.
Certificate verify_coalgebra(const UnitalCoalgebra& x);

/// Δf = (f⊗f)Δ, εf = ε, f(1) = 1, df = fd for f: X → Y (target × source).
Certificate verify_coalgebra_map(const UnitalCoalgebra& x, const UnitalCoalgebra& y, const SparseMatrix& f);

/// X_n = ker(X → X^{⊗n+1} → X̄^{⊗n+1}) as a basis of vectors.
std::vector<Vec> canonical_level(const UnitalCoalgebra& x, int n);
/// Dimensions of X_0..X_max.
std::vector<int> canonical_dims(const UnitalCoalgebra& x, int max_n);
bool is_unital(const UnitalCoalgebra& x);
/// Least n with X_n = X, or -1.
int filtration_length(const UnitalCoalgebra& x);
/// Canonical filtration as a FilteredComplex; requires a basis adapted to it.
FilteredComplex canonical_filtered(const UnitalCoalgebra& x);

/// X̄ = ker ε with basis e_i − ε(e_i)·1 (i ≠ unit), labels kept.
struct ReducedCoalgebra {
  CochainComplex complex;
  std::vector<Tensor2> delta_bar;  // in X̄ indices
  std::vector<int> source_index;   // X̄ index -> X index
};
ReducedCoalgebra reduced(const UnitalCoalgebra& x);

/// Local artinian dg algebra: unit plus a nilpotent ideal m spanned by the
/// remaining basis vectors, concentrated in degrees <= 0.
class ArtinianDgAlgebra {
public:
  ArtinianDgAlgebra() = default;
  ArtinianDgAlgebra(Cdga algebra, std::string unit_label = "1");

  const Cdga& algebra() const { return algebra_; }
  int unit() const { return unit_; }
  int order() const { return order_; }  // least N with m^{N+1} = 0
  int dim() const { return algebra_.dim(); }
  /// The maximal ideal as a non-unital cdga (labels kept).
  Cdga maximal_ideal() const;
  /// Basis of m^k as vectors in A.
  std::vector<Vec> ideal_power(int k) const;
  const std::vector<int>& m_indices() const { return m_; }

private:
  Cdga algebra_;
  int unit_ = -1;
  int order_ = 0;
  std::vector<int> m_;
};

/// A*: Δ the transpose of the product, ε evaluation at 1, unit the augmentation.
/// The dual of basis vector a is labelled a + "'" (the unit's dual is "1").
UnitalCoalgebra dual_artinian(const ArtinianDgAlgebra& a);

/// Dual of an algebra map f: A → B (rows B, cols A) as a coalgebra map B* → A*.
SparseMatrix dual_map(const ArtinianDgAlgebra& a, const ArtinianDgAlgebra& b, const SparseMatrix& f);

}  // namespace dgl
