#pragma once

#include "dgl/graded.hpp"

#include <map>
#include <string>
#include <utility>

namespace dgl {

using ProductTable = std::map<std::pair<int, int>, SparseRow>;  // (i, j) global -> e_i·e_j

/// Graded-commutative dg algebra (possibly non-unital) by structure constants.
class Cdga {
public:
  Cdga() = default;
  /// Pairs missing from `product` are filled by graded commutativity.
  /// Throws ValidationError when an axiom fails.
  Cdga(CochainComplex complex, ProductTable product);

  const CochainComplex& complex() const { return complex_; }
  const GradedSpace& space() const { return complex_.space(); }
  int dim() const { return space().total_dim(); }
  int degree(int i) const { return degrees_[i]; }
  const SparseRow& product_basis(int i, int j) const;
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec d(const Vec& a) const;
  int index(const std::string& label) const;

private:
  CochainComplex complex_;
  ProductTable product_;
  std::vector<int> degrees_;
  SparseMatrix total_d_;
};

/// Certificate string for the first failed axiom, if any.
std::optional<std::string> cdga_violation(const CochainComplex& c, const ProductTable& product);

/// Completes a product table by graded commutativity; conflicting entries throw.
ProductTable complete_commutative(const GradedSpace& space, const ProductTable& product);

/// A ⊗ B with labels "a*b" and (a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'.
Cdga tensor_cdga(const Cdga& a, const Cdga& b);

}  // namespace dgl
