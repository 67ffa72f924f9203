#pragma once

#include "dgl/lie.hpp"

namespace dgl::catalog {

/// sl₂ in degree 0: [h,e] = 2e, [h,f] = −2f, [e,f] = h.
DgLieAlgebra sl2();
/// a, b, c in degree 0 with [a,b] = c.
DgLieAlgebra heisenberg();
/// a in degree 1, c in degree 2, da = c, [a,a] = c.
DgLieAlgebra ac_algebra();
/// Strictly upper triangular 4×4 matrices: e12, e23, e34, e13, e24, e14 in degree 0.
DgLieAlgebra upper_triangular4();
/// One-dimensional abelian algebra in the given degree.
DgLieAlgebra line(int degree, const std::string& label = "x");
/// Abelian algebra on a complex.
DgLieAlgebra abelian(const CochainComplex& c);

/// Unital cdga k (basis "1").
Cdga ground_field();
/// k[x]/(x^{n+1}) with deg x = degree, zero differential, basis 1, x, x^2, ...
Cdga truncated_polynomial(int n, int degree = 0);
/// Non-unital ideal (x) of k[x]/(x^{n+1}).
Cdga truncated_polynomial_ideal(int n, int degree = 0);
/// k[x]/(x^{n+1}) ⊗ Λ(eta), deg eta = −1, d eta = x.
Cdga koszul_truncated(int n);
/// k × k (two orthogonal idempotents), degree 0.
Cdga split_product();

/// Conjugates g by a degree-preserving change of basis (columns: new basis in old coordinates).
DgLieAlgebra change_basis(const DgLieAlgebra& g, const SparseMatrix& p, const std::string& prefix);

}  // namespace dgl::catalog
