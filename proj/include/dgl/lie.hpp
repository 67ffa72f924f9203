#pragma once

#include "dgl/cdga.hpp"
#include "dgl/filtered.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgl {

using BracketTable = std::map<std::pair<int, int>, SparseRow>;  // (i, j) global -> [e_i, e_j]

struct Certificate {
  bool ok = true;
  std::string violation;
};

/// dg Lie algebra by structure constants on a labelled graded basis. Elements
/// are dense coordinate vectors in the global basis order.
class DgLieAlgebra {
public:
  DgLieAlgebra() = default;
  /// Pairs missing from `bracket` are filled by graded antisymmetry. All
  /// axioms are checked; failures throw ValidationError with the certificate.
  DgLieAlgebra(CochainComplex complex, BracketTable bracket);

  /// Skips validation; for building deliberately broken inputs to verify_dgla.
  static DgLieAlgebra unchecked(CochainComplex complex, BracketTable bracket);
  static DgLieAlgebra abelian(CochainComplex complex);

  const CochainComplex& complex() const { return complex_; }
  const GradedSpace& space() const { return complex_.space(); }
  int dim() const { return static_cast<int>(degrees_.size()); }
  int degree(int i) const { return degrees_[i]; }
  const std::string& label(int i) const { return space().label_of(i); }
  int index(const std::string& label) const;
  const BracketTable& table() const { return bracket_; }

  const SparseRow& bracket_basis(int i, int j) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec d(const Vec& x) const;
  const SparseMatrix& total_differential() const { return total_d_; }
  Vec zero() const { return zero_vec(dim()); }
  Vec basis(const std::string& label) const { return unit_vec(dim(), index(label)); }
  Vec element(const std::map<std::string, Rational>& coeffs) const;
  /// Global indices of the basis in one degree.
  std::vector<int> indices_in_degree(int degree) const;
  bool is_abelian() const { return bracket_.empty(); }

private:
  CochainComplex complex_;
  BracketTable bracket_;
  std::vector<int> degrees_;
  SparseMatrix total_d_;
  std::map<std::string, int> index_;

  void init();
};

/// Checks degrees, antisymmetry, Jacobi, Leibniz and d² = 0.
Certificate verify_dgla(const DgLieAlgebra& g);

/// Is `f` (target × source, global coordinates) a morphism of dg Lie algebras?
Certificate verify_lie_map(const DgLieAlgebra& source, const DgLieAlgebra& target, const SparseMatrix& f);

/// Free Lie algebra on graded generators modulo brackets of weight > W.
struct FreeLieTruncated {
  GradedSpace generators;
  int max_weight = 0;
  DgLieAlgebra lie;                         // zero differential unless built with one
  std::vector<int> weight;                  // per global basis index
  std::vector<std::pair<int, int>> factors; // (u, v) with b = [u, v]; (-1, g) for generator g
  std::vector<std::map<std::vector<int>, Rational>> words;  // image in the tensor algebra

  std::vector<int> weight_dims() const;  // index w-1
  int generator_index(int g) const;      // global basis index of generator g (global generator order)
  /// Coordinates of a tensor-algebra polynomial that is a Lie element of weight <= W.
  Vec express(const std::map<std::vector<int>, Rational>& poly) const;
  /// Extends generator images (coordinates, homogeneous of `degree`) to a derivation.
  SparseMatrix derivation(const std::vector<Vec>& generator_images, int degree) const;
  /// Extends generator images in `target` to a Lie morphism (target nilpotent of class <= W or
  /// zero on weights > W); returns the matrix target × this.
  SparseMatrix extend_morphism(const DgLieAlgebra& target, const std::vector<Vec>& generator_images) const;
  /// The same algebra with differential given on generators.
  FreeLieTruncated with_differential(const std::vector<Vec>& generator_images) const;
};

FreeLieTruncated free_lie(const GradedSpace& generators, int max_weight);

/// Witt's necklace count for all-even generators.
long witt_dimension(int generators, int weight);

/// γ_1 = g, γ_{k+1} = [g, γ_k], each as a basis of vectors; stops at zero or when stable.
std::vector<std::vector<Vec>> lower_central_series(const DgLieAlgebra& g);
std::optional<int> nilpotency_index(const DgLieAlgebra& g);

/// g rewritten in a basis adapted to the lower central series, degree by degree.
struct LcsBasis {
  DgLieAlgebra lie;          // isomorphic copy in the adapted basis
  std::vector<int> weight;   // k with the basis vector in γ_k minus γ_{k+1}
  SparseMatrix to_original;  // columns: adapted basis in original coordinates
  SparseMatrix from_original;
  int nilpotency = 0;
};
LcsBasis lcs_rebase(const DgLieAlgebra& g);

/// The adapted basis with weight k on γ_k minus γ_{k+1}, as an increasing filtration
/// (level i spanned by weights <= i).
FilteredComplex lcs_filtration(const LcsBasis& b);

/// First failure of [g_i, g_j] ⊆ g_{i+j} or d(g_i) ⊆ g_i for per-basis weights.
std::optional<std::string> lie_filtration_violation(const DgLieAlgebra& g, const std::vector<int>& weight);

/// B⊗g with [a⊗x, b⊗y] = (−1)^{|x||b|} ab⊗[x,y]; labels "a*x".
DgLieAlgebra tensor_cdga_lie(const Cdga& b, const DgLieAlgebra& g);

/// Semidirect product g ⋉ h; action[x] is the matrix of x acting on h (global coordinates of h).
DgLieAlgebra semidirect(const DgLieAlgebra& g, const DgLieAlgebra& h, const std::vector<SparseMatrix>& action);

/// Direct sum of dg Lie algebras, labels unchanged (must be disjoint).
DgLieAlgebra direct_sum(const DgLieAlgebra& g, const DgLieAlgebra& h);

/// Bernoulli numbers B_0..B_n with B_1 = −1/2.
std::vector<Rational> bernoulli_numbers(int n);

/// BCH product log(e^x e^y), computed by the recursive commutator formula and
/// truncated after `order` nested terms. Generic in the element type.
template <class E>
struct LieOps {
  std::function<E(const E&, const E&)> add;
  std::function<E(const Rational&, const E&)> scale;
  std::function<E(const E&, const E&)> bracket;
  std::function<bool(const E&)> is_zero;
};

template <class E>
E bch(const E& x, const E& y, int order, const LieOps<E>& ops) {
  // Z_1 = x + y; (n+1) Z_{n+1} = ½[x − y, Z_n] + Σ_{p≥1} B_{2p}/(2p)! Σ_{k_1+…+k_{2p}=n} [Z_{k_1},[…,[Z_{k_{2p}}, x + y]…]]
  std::vector<E> z{ops.add(x, y)};
  auto bern = bernoulli_numbers(order + 1);
  E xmy = ops.add(x, ops.scale(-1, y));
  E xpy = z[0];
  for (int n = 1; n < order; ++n) {
    E next = ops.scale(Rational(1, 2), ops.bracket(xmy, z[n - 1]));
    Rational fact = 1;
    for (int p = 1; 2 * p <= n; ++p) {
      fact *= Rational((2 * p - 1) * (2 * p));
      Rational coef = bern[2 * p] / fact;
      // Sum over compositions of n into 2p positive parts.
      std::vector<int> parts(2 * p, 1);
      parts.back() = n - (2 * p - 1);
      std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == 2 * p - 1) {
          parts[pos] = remaining;
          E acc = xpy;
          for (int q = 2 * p - 1; q >= 0; --q) acc = ops.bracket(z[parts[q] - 1], acc);
          next = ops.add(next, ops.scale(coef, acc));
          return;
        }
        for (int k = 1; k <= remaining - (2 * p - 1 - pos); ++k) {
          parts[pos] = k;
          rec(pos + 1, remaining - k);
        }
      };
      rec(0, n);
    }
    z.push_back(ops.scale(Rational(1, n + 1), next));
  }
  E out = z[0];
  for (std::size_t i = 1; i < z.size(); ++i) out = ops.add(out, z[i]);
  return out;
}

LieOps<Vec> lie_ops(const DgLieAlgebra& g);

/// Gauge-group elements of a nilpotent algebra are stored by their logarithm.
struct GaugeElement {
  Vec log;
};

GaugeElement exp_element(const DgLieAlgebra& g, const Vec& y);
GaugeElement group_multiply(const DgLieAlgebra& g, const GaugeElement& a, const GaugeElement& b, int nilpotency);
GaugeElement group_inverse(const GaugeElement& a);

}  // namespace dgl
