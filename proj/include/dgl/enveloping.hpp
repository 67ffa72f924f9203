#pragma once

#include "dgl/lie.hpp"

#include <map>
#include <vector>

namespace dgl {

/// Words in the basis letters of g with rational coefficients.
using Word = std::vector<int>;
using UElement = std::map<Word, Rational>;

/// Universal enveloping algebra of g in PBW normal form: nondecreasing words
/// with no repeated odd letter. Letters carry weights (default 1); words of
/// total weight above `bound` are discarded. When every bracket component has
/// weight >= the sum of its inputs (e.g. a lower-central-adapted basis), those
/// words span an ideal and the result is the exact quotient; with unit
/// weights, products are exact whenever the inputs' lengths sum to <= bound.
class EnvelopingTruncated {
public:
  EnvelopingTruncated(DgLieAlgebra g, int bound, std::vector<int> letter_weight = {});

  const DgLieAlgebra& lie() const { return g_; }
  int bound() const { return bound_; }
  bool quotient_exact() const { return ideal_; }

  int word_weight(const Word& w) const;
  /// PBW normal form of an arbitrary word / element.
  UElement normal_form(const Word& w) const;
  UElement normal_form(const UElement& x) const;
  UElement multiply(const UElement& a, const UElement& b) const;
  UElement from_lie(const Vec& x) const;

  /// PBW basis monomials of weight <= bound.
  std::vector<Word> basis() const;
  /// Count of PBW monomials by length (index = length).
  std::vector<int> monomial_counts() const;

  /// Coordinates of an element in basis() order.
  Vec coordinates(const UElement& x, const std::vector<Word>& basis) const;

private:
  DgLieAlgebra g_;
  int bound_;
  std::vector<int> weight_;
  bool ideal_ = false;
  mutable std::map<Word, UElement> memo_;

  bool odd(int i) const { return g_.degree(i) & 1; }
};

/// Symmetrization S(g) → U(g) on monomials of length <= bound (unit weights),
/// as a matrix from sym monomials to the PBW basis.
struct Symmetrization {
  std::vector<Word> sym_basis;  // sorted monomials
  std::vector<Word> pbw_basis;
  SparseMatrix matrix;
  /// Bijective on every length filtration piece 0..bound.
  bool filtered_bijective = false;
};
Symmetrization symmetrization_map(const DgLieAlgebra& g, int bound);

/// gr g for per-basis weights: keeps the bracket components of weight exactly
/// w_i + w_j and the weight-preserving part of d.
DgLieAlgebra associated_graded_lie(const DgLieAlgebra& g, const std::vector<int>& weight);

/// dim of the span in U(g) of all words with letter-weight sum <= p and
/// length <= l, for 0 <= p <= max_level and 0 <= l <= max_length.
std::vector<std::vector<int>> filtered_word_spans(const DgLieAlgebra& g, const std::vector<int>& weight, int max_level,
                                                  int max_length);

}  // namespace dgl
