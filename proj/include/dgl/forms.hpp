#pragma once

#include "dgl/lie.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dgl {

/// t_1^{e_1}⋯t_n^{e_n} · dt_S with S a bitmask (bit j-1 for dt_j), t_0 and dt_0
/// eliminated through Σ t_i = 1 and Σ dt_i = 0.
struct FormMonomial {
  std::vector<int> exps;
  unsigned mask = 0;

  int degree() const;       // number of dt's
  int poly_degree() const;  // total t-degree
  auto operator<=>(const FormMonomial&) const = default;
};

using Form = std::map<FormMonomial, Rational>;

/// Ω_n = k[t_1..t_n] ⊗ Λ(dt_1..dt_n) with a cap D on polynomial degree.
class PolyFormAlgebra {
public:
  PolyFormAlgebra(int n, int cap);

  int n() const { return n_; }
  int cap() const { return cap_; }
  /// Monomials of the given form degree with polynomial degree <= cap.
  std::vector<FormMonomial> basis(int degree) const;
  int dim(int degree) const { return static_cast<int>(basis(degree).size()); }

  Form one() const;
  Form t(int i) const;   // 0 <= i <= n; t_0 = 1 − Σ t_j
  Form dt(int i) const;  // dt_0 = −Σ dt_j
  /// Throws ValidationError naming the needed cap when f exceeds it.
  void check_cap(const Form& f) const;

  /// Coface d^i pulled back: Ω_n → Ω_{n−1}.
  Form face(int i, const Form& f) const;
  /// Codegeneracy s^i pulled back: Ω_n → Ω_{n+1}.
  Form degeneracy(int i, const Form& f) const;

private:
  int n_;
  int cap_;
};

namespace forms {

Form multiply(const Form& a, const Form& b);
Form d(const Form& f);
Form add(const Form& a, const Form& b);
Form scale(const Rational& s, const Form& f);
/// Substitutes t_j ↦ images[j-1] (degree-0 forms in `m` variables), dt_j ↦ d(images[j-1]).
Form substitute(const Form& f, const std::vector<Form>& images, int m);
Form variable(int m, int j);  // t_j in m variables, 1 <= j <= m
Form constant(int m, const Rational& c);
int poly_degree(const Form& f);

}  // namespace forms

/// Elements of Ω_n ⊗ H for a finite dg Lie algebra H, as sparse sums of
/// (form monomial, basis index). [ω⊗x, η⊗y] = (−1)^{|x||η|} ωη⊗[x,y] and
/// d(ω⊗x) = dω⊗x + (−1)^{|ω|} ω⊗dx.
using FormVec = std::map<std::pair<FormMonomial, int>, Rational>;

class FormHost {
public:
  FormHost() = default;
  explicit FormHost(DgLieAlgebra h) : h_(std::move(h)) {}

  const DgLieAlgebra& lie() const { return h_; }

  FormVec constant(int n, const Vec& x) const;
  /// Coefficients of the form-free part (all exponents zero, no dt).
  Vec constant_part(const FormVec& z) const;
  FormVec tensor(const Form& w, const Vec& x) const;

  FormVec add(const FormVec& a, const FormVec& b) const;
  FormVec scale(const Rational& s, const FormVec& a) const;
  FormVec bracket(const FormVec& a, const FormVec& b) const;
  FormVec d(const FormVec& a) const;
  bool homogeneous(const FormVec& a, int degree) const;

  FormVec mc_residual(const FormVec& z) const;
  bool is_mc(const FormVec& z) const { return mc_residual(z).empty(); }

  FormVec face(const PolyFormAlgebra& omega, int i, const FormVec& z) const;
  FormVec degeneracy(const PolyFormAlgebra& omega, int i, const FormVec& z) const;
  /// Any substitution of the variables (see forms::substitute).
  FormVec substitute(const FormVec& z, const std::vector<Form>& images, int m) const;

  /// Sets t_j = 0 and dt_j = 0.
  FormVec at_zero(const FormVec& z, int j) const;
  /// z = x + dt_j ∧ y with x, y free of dt_j; returns (x, y).
  std::pair<FormVec, FormVec> split_dt(const FormVec& z, int j) const;
  FormVec wedge_dt(int j, const FormVec& y) const;  // dt_j ∧ y
  /// ∫_0^{t_j} in the variable t_j (y free of dt_j).
  FormVec integrate(const FormVec& y, int j) const;
  FormVec derivative(const FormVec& y, int j) const;

  int poly_degree(const FormVec& z) const;
  /// Embeds an element of Ω_m ⊗ H into Ω_n ⊗ H (extra variables absent).
  FormVec extend(const FormVec& z, int n) const;

  LieOps<FormVec> ops() const;

private:
  DgLieAlgebra h_;
};

std::string to_string(const FormMonomial& m);

}  // namespace dgl
