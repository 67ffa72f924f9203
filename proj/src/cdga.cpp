#include "dgl/cdga.hpp"

namespace dgl {

namespace {

const SparseRow kEmpty;

Vec row_to_vec(const SparseRow& r, int n) {
  Vec v = zero_vec(n);
  for (const auto& [i, x] : r) v[i] = x;
  return v;
}

}  // namespace

ProductTable complete_commutative(const GradedSpace& space, const ProductTable& product) {
  ProductTable out;
  int n = space.total_dim();
  for (const auto& [key, row] : product) {
    auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n) throw ValidationError("product index out of range");
    SparseRow r;
    for (const auto& [k, v] : row)
      if (v != 0) r[k] = v;
    if (r.empty()) continue;
    auto sw = out.find({j, i});
    SparseRow flipped;
    int s = koszul(space.degree_of(i), space.degree_of(j));
    for (const auto& [k, v] : r) flipped[k] = v * s;
    if (i != j && sw != out.end() && sw->second != flipped)
      throw ValidationError("product table conflicts with graded commutativity at (" + space.label_of(i) + ", " +
                            space.label_of(j) + ")");
    out[{i, j}] = r;
    out[{j, i}] = flipped;
  }
  return out;
}

std::optional<std::string> cdga_violation(const CochainComplex& c, const ProductTable& product) {
  const auto& sp = c.space();
  int n = sp.total_dim();
  SparseMatrix d = c.total_differential();
  auto prod = [&](const Vec& a, const Vec& b) {
    Vec out = zero_vec(n);
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        auto it = product.find({i, j});
        if (it == product.end()) continue;
        for (const auto& [k, v] : it->second) out[k] += a[i] * b[j] * v;
      }
    }
    return out;
  };
  auto get = [&](int i, int j) {
    auto it = product.find({i, j});
    return row_to_vec(it == product.end() ? kEmpty : it->second, n);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int di = sp.degree_of(i), dj = sp.degree_of(j);
      Vec ij = get(i, j);
      for (int k = 0; k < n; ++k)
        if (ij[k] != 0 && sp.degree_of(k) != di + dj)
          return "product " + sp.label_of(i) + "." + sp.label_of(j) + " has wrong degree";
      if (ij != scale(koszul(di, dj), get(j, i)))
        return "graded commutativity fails for (" + sp.label_of(i) + ", " + sp.label_of(j) + ")";
      Vec lhs = d.apply(ij);
      Vec rhs = add(prod(d.column(i), unit_vec(n, j)), scale(parity_sign(di), prod(unit_vec(n, i), d.column(j))));
      if (lhs != rhs) return "Leibniz rule fails for (" + sp.label_of(i) + ", " + sp.label_of(j) + ")";
      for (int k = 0; k < n; ++k) {
        Vec l = prod(ij, unit_vec(n, k));
        Vec r = prod(unit_vec(n, i), get(j, k));
        if (l != r)
          return "associativity fails for (" + sp.label_of(i) + ", " + sp.label_of(j) + ", " + sp.label_of(k) + ")";
      }
    }
  return std::nullopt;
}

Cdga::Cdga(CochainComplex complex, ProductTable product) : complex_(std::move(complex)) {
  product_ = complete_commutative(complex_.space(), product);
  if (auto v = cdga_violation(complex_, product_)) throw ValidationError("not a cdga: " + *v);
  for (int i = 0; i < dim(); ++i) degrees_.push_back(space().degree_of(i));
  total_d_ = complex_.total_differential();
}

const SparseRow& Cdga::product_basis(int i, int j) const {
  auto it = product_.find({i, j});
  return it == product_.end() ? kEmpty : it->second;
}

Vec Cdga::multiply(const Vec& a, const Vec& b) const {
  Vec out = zero_vec(dim());
  for (int i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      for (const auto& [k, v] : product_basis(i, j)) out[k] += a[i] * b[j] * v;
    }
  }
  return out;
}

Vec Cdga::d(const Vec& a) const { return total_d_.apply(a); }

int Cdga::index(const std::string& label) const {
  auto f = space().find(label);
  if (!f) throw ValidationError("unknown label '" + label + "'");
  return space().offset(f->first) + f->second;
}

}  // namespace dgl

namespace dgl {

Cdga tensor_cdga(const Cdga& a, const Cdga& b) {
  CochainComplex c = tensor(a.complex(), b.complex());
  const auto& s = c.space();
  auto at = [&](int i, int j) {
    auto f = s.find(a.space().label_of(i) + "*" + b.space().label_of(j));
    if (!f) throw ValidationError("tensor_cdga: ambiguous labels");
    return s.offset(f->first) + f->second;
  };
  ProductTable p;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        for (int l = 0; l < b.dim(); ++l) {
          const auto& ak = a.product_basis(i, k);
          const auto& bl = b.product_basis(j, l);
          if (ak.empty() || bl.empty()) continue;
          int sign = koszul(b.degree(j), a.degree(k));
          SparseRow row;
          for (const auto& [x, u] : ak)
            for (const auto& [y, v] : bl) row[at(x, y)] += sign * u * v;
          p[{at(i, j), at(k, l)}] = row;
        }
  return Cdga(c, p);
}

}  // namespace dgl
