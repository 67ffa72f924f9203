#include "dgl/forms.hpp"

#include <bit>
#include <functional>

namespace dgl {

int FormMonomial::degree() const { return std::popcount(mask); }

int FormMonomial::poly_degree() const {
  int s = 0;
  for (int e : exps) s += e;
  return s;
}

std::string to_string(const FormMonomial& m) {
  std::string out;
  for (std::size_t j = 0; j < m.exps.size(); ++j) {
    if (m.exps[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += "t" + std::to_string(j + 1);
    if (m.exps[j] > 1) out += "^" + std::to_string(m.exps[j]);
  }
  for (std::size_t j = 0; j < m.exps.size(); ++j) {
    if (!(m.mask >> j & 1u)) continue;
    if (!out.empty()) out += "*";
    out += "dt" + std::to_string(j + 1);
  }
  return out.empty() ? "1" : out;
}

namespace forms {

namespace {

// Sign of dt_A ∧ dt_B rearranged into increasing order.
int merge_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned bb = b; bb; bb &= bb - 1) {
    int j = std::countr_zero(bb);
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

void accumulate(Form& f, const FormMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto& slot = f[m];
  slot += c;
  if (slot == 0) f.erase(m);
}

}  // namespace

Form multiply(const Form& a, const Form& b) {
  Form out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      if (ma.mask & mb.mask) continue;
      FormMonomial m{ma.exps, ma.mask | mb.mask};
      for (std::size_t j = 0; j < m.exps.size(); ++j) m.exps[j] += mb.exps[j];
      accumulate(out, m, ca * cb * merge_sign(ma.mask, mb.mask));
    }
  return out;
}

Form d(const Form& f) {
  Form out;
  for (const auto& [m, c] : f)
    for (std::size_t j = 0; j < m.exps.size(); ++j) {
      if (m.exps[j] == 0 || (m.mask >> j & 1u)) continue;
      FormMonomial n = m;
      n.exps[j] -= 1;
      n.mask |= 1u << j;
      int sign = (std::popcount(m.mask & ((1u << j) - 1)) & 1) ? -1 : 1;
      accumulate(out, n, c * m.exps[j] * sign);
    }
  return out;
}

Form add(const Form& a, const Form& b) {
  Form out = a;
  for (const auto& [m, c] : b) accumulate(out, m, c);
  return out;
}

Form scale(const Rational& s, const Form& f) {
  if (s == 0) return {};
  Form out = f;
  for (auto& [m, c] : out) c *= s;
  return out;
}

Form variable(int m, int j) {
  FormMonomial mono{std::vector<int>(m, 0), 0};
  mono.exps[j - 1] = 1;
  return {{mono, Rational(1)}};
}

Form constant(int m, const Rational& c) {
  if (c == 0) return {};
  return {{FormMonomial{std::vector<int>(m, 0), 0}, c}};
}

int poly_degree(const Form& f) {
  int best = 0;
  for (const auto& [m, c] : f) best = std::max(best, m.poly_degree());
  return best;
}

Form substitute(const Form& f, const std::vector<Form>& images, int m) {
  std::vector<Form> dimages;
  for (const auto& im : images) dimages.push_back(d(im));
  std::map<std::pair<int, int>, Form> powers;
  auto power = [&](int j, int e) -> const Form& {
    auto key = std::make_pair(j, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    Form p = constant(m, 1);
    for (int k = 0; k < e; ++k) p = multiply(p, images[j]);
    return powers.emplace(key, std::move(p)).first->second;
  };
  Form out;
  for (const auto& [mono, c] : f) {
    Form term = constant(m, c);
    for (std::size_t j = 0; j < mono.exps.size(); ++j)
      if (mono.exps[j] > 0) term = multiply(term, power(static_cast<int>(j), mono.exps[j]));
    for (std::size_t j = 0; j < mono.exps.size(); ++j)
      if (mono.mask >> j & 1u) term = multiply(term, dimages[j]);
    out = add(out, term);
  }
  return out;
}

}  // namespace forms

PolyFormAlgebra::PolyFormAlgebra(int n, int cap) : n_(n), cap_(cap) {
  if (n < 0 || n > 16) throw ValidationError("simplex dimension out of range");
  if (cap < 0) throw ValidationError("negative polynomial cap");
}

std::vector<FormMonomial> PolyFormAlgebra::basis(int degree) const {
  std::vector<FormMonomial> out;
  std::vector<int> exps(n_, 0);
  std::vector<std::vector<int>> polys;
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == n_) {
      polys.push_back(exps);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      exps[j] = e;
      rec(j + 1, left - e);
    }
    exps[j] = 0;
  };
  rec(0, cap_);
  for (unsigned mask = 0; mask < (1u << n_); ++mask) {
    if (std::popcount(mask) != degree) continue;
    for (const auto& p : polys) out.push_back({p, mask});
  }
  return out;
}

Form PolyFormAlgebra::one() const { return forms::constant(n_, 1); }

Form PolyFormAlgebra::t(int i) const {
  if (i < 0 || i > n_) throw ValidationError("vertex coordinate out of range");
  if (i > 0) return forms::variable(n_, i);
  Form f = one();
  for (int j = 1; j <= n_; ++j) f = forms::add(f, forms::scale(-1, forms::variable(n_, j)));
  return f;
}

Form PolyFormAlgebra::dt(int i) const { return forms::d(t(i)); }

void PolyFormAlgebra::check_cap(const Form& f) const {
  int deg = forms::poly_degree(f);
  if (deg > cap_)
    throw ValidationError("cap overflow: polynomial degree " + std::to_string(deg) + " needs D >= " +
                          std::to_string(deg) + " (D = " + std::to_string(cap_) + ")");
}

Form PolyFormAlgebra::face(int i, const Form& f) const {
  if (n_ == 0) throw ValidationError("no faces in dimension 0");
  if (i < 0 || i > n_) throw ValidationError("face index out of range");
  const int m = n_ - 1;
  std::vector<Form> images(n_);
  for (int j = 1; j <= n_; ++j) {
    if (j < i) {
      images[j - 1] = forms::variable(m, j);
    } else if (j == i) {
      images[j - 1] = {};
    } else if (i == 0 && j == 1) {
      Form s0 = forms::constant(m, 1);
      for (int k = 1; k <= m; ++k) s0 = forms::add(s0, forms::scale(-1, forms::variable(m, k)));
      images[j - 1] = s0;
    } else {
      images[j - 1] = forms::variable(m, j - 1);
    }
  }
  Form out = forms::substitute(f, images, m);
  PolyFormAlgebra(m, cap_).check_cap(out);
  return out;
}

Form PolyFormAlgebra::degeneracy(int i, const Form& f) const {
  if (i < 0 || i > n_) throw ValidationError("degeneracy index out of range");
  const int m = n_ + 1;
  std::vector<Form> images(n_);
  for (int j = 1; j <= n_; ++j) {
    if (j < i)
      images[j - 1] = forms::variable(m, j);
    else if (j == i)
      images[j - 1] = forms::add(forms::variable(m, j), forms::variable(m, j + 1));
    else
      images[j - 1] = forms::variable(m, j + 1);
  }
  Form out = forms::substitute(f, images, m);
  PolyFormAlgebra(m, cap_).check_cap(out);
  return out;
}

// ---- Ω_n ⊗ H ----

namespace {

void accumulate(FormVec& v, const FormMonomial& m, int i, const Rational& c) {
  if (c == 0) return;
  auto key = std::make_pair(m, i);
  auto& slot = v[key];
  slot += c;
  if (slot == 0) v.erase(key);
}

}  // namespace

FormVec FormHost::constant(int n, const Vec& x) const { return tensor(forms::constant(n, 1), x); }

Vec FormHost::constant_part(const FormVec& z) const {
  Vec out = h_.zero();
  for (const auto& [key, c] : z)
    if (key.first.mask == 0 && key.first.poly_degree() == 0) out[key.second] += c;
  return out;
}

FormVec FormHost::tensor(const Form& w, const Vec& x) const {
  FormVec out;
  for (const auto& [m, c] : w)
    for (int i = 0; i < h_.dim(); ++i)
      if (x[i] != 0) accumulate(out, m, i, c * x[i]);
  return out;
}

FormVec FormHost::add(const FormVec& a, const FormVec& b) const {
  FormVec out = a;
  for (const auto& [key, c] : b) accumulate(out, key.first, key.second, c);
  return out;
}

FormVec FormHost::scale(const Rational& s, const FormVec& a) const {
  if (s == 0) return {};
  FormVec out = a;
  for (auto& [key, c] : out) c *= s;
  return out;
}

FormVec FormHost::bracket(const FormVec& a, const FormVec& b) const {
  FormVec out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      const auto& br = h_.bracket_basis(ka.second, kb.second);
      if (br.empty()) continue;
      Form prod = forms::multiply({{ka.first, ca}}, {{kb.first, cb}});
      if (prod.empty()) continue;
      int sign = koszul(h_.degree(ka.second), kb.first.degree());
      for (const auto& [m, c] : prod)
        for (const auto& [k, v] : br) accumulate(out, m, k, c * v * sign);
    }
  return out;
}

FormVec FormHost::d(const FormVec& a) const {
  FormVec out;
  const auto& dm = h_.total_differential();
  for (const auto& [key, c] : a) {
    for (const auto& [m, v] : forms::d({{key.first, c}})) accumulate(out, m, key.second, v);
    int sign = parity_sign(key.first.degree());
    for (int r = 0; r < dm.rows(); ++r) {
      Rational e = dm.get(r, key.second);
      if (e != 0) accumulate(out, key.first, r, c * e * sign);
    }
  }
  return out;
}

bool FormHost::homogeneous(const FormVec& a, int degree) const {
  for (const auto& [key, c] : a)
    if (key.first.degree() + h_.degree(key.second) != degree) return false;
  return true;
}

FormVec FormHost::mc_residual(const FormVec& z) const {
  return add(d(z), scale(Rational(1, 2), bracket(z, z)));
}

FormVec FormHost::substitute(const FormVec& z, const std::vector<Form>& images, int m) const {
  std::map<int, Form> by_index;
  for (const auto& [key, c] : z) by_index[key.second][key.first] = c;
  FormVec out;
  for (const auto& [i, f] : by_index)
    for (const auto& [mono, c] : forms::substitute(f, images, m)) accumulate(out, mono, i, c);
  return out;
}

FormVec FormHost::face(const PolyFormAlgebra& omega, int i, const FormVec& z) const {
  std::map<int, Form> by_index;
  for (const auto& [key, c] : z) by_index[key.second][key.first] = c;
  FormVec out;
  for (const auto& [k, f] : by_index)
    for (const auto& [mono, c] : omega.face(i, f)) accumulate(out, mono, k, c);
  return out;
}

FormVec FormHost::degeneracy(const PolyFormAlgebra& omega, int i, const FormVec& z) const {
  std::map<int, Form> by_index;
  for (const auto& [key, c] : z) by_index[key.second][key.first] = c;
  FormVec out;
  for (const auto& [k, f] : by_index)
    for (const auto& [mono, c] : omega.degeneracy(i, f)) accumulate(out, mono, k, c);
  return out;
}

FormVec FormHost::at_zero(const FormVec& z, int j) const {
  FormVec out;
  for (const auto& [key, c] : z)
    if (key.first.exps[j - 1] == 0 && !(key.first.mask >> (j - 1) & 1u)) out.emplace(key, c);
  return out;
}

std::pair<FormVec, FormVec> FormHost::split_dt(const FormVec& z, int j) const {
  const unsigned bit = 1u << (j - 1);
  FormVec x, y;
  for (const auto& [key, c] : z) {
    if (!(key.first.mask & bit)) {
      x.emplace(key, c);
      continue;
    }
    // dt_S = (−1)^{#S below j} dt_j ∧ dt_{S∖j}
    FormMonomial m = key.first;
    m.mask &= ~bit;
    int sign = (std::popcount(m.mask & (bit - 1)) & 1) ? -1 : 1;
    accumulate(y, m, key.second, c * sign);
  }
  return {x, y};
}

FormVec FormHost::wedge_dt(int j, const FormVec& y) const {
  const unsigned bit = 1u << (j - 1);
  FormVec out;
  for (const auto& [key, c] : y) {
    if (key.first.mask & bit) continue;
    FormMonomial m = key.first;
    int sign = (std::popcount(m.mask & (bit - 1)) & 1) ? -1 : 1;
    m.mask |= bit;
    accumulate(out, m, key.second, c * sign);
  }
  return out;
}

FormVec FormHost::integrate(const FormVec& y, int j) const {
  FormVec out;
  for (const auto& [key, c] : y) {
    if (key.first.mask >> (j - 1) & 1u) throw ValidationError("integrand contains dt" + std::to_string(j));
    FormMonomial m = key.first;
    m.exps[j - 1] += 1;
    accumulate(out, m, key.second, c / m.exps[j - 1]);
  }
  return out;
}

FormVec FormHost::derivative(const FormVec& y, int j) const {
  FormVec out;
  for (const auto& [key, c] : y) {
    if (key.first.exps[j - 1] == 0) continue;
    FormMonomial m = key.first;
    int e = m.exps[j - 1]--;
    accumulate(out, m, key.second, c * e);
  }
  return out;
}

int FormHost::poly_degree(const FormVec& z) const {
  int best = 0;
  for (const auto& [key, c] : z) best = std::max(best, key.first.poly_degree());
  return best;
}

FormVec FormHost::extend(const FormVec& z, int n) const {
  FormVec out;
  for (const auto& [key, c] : z) {
    FormMonomial m = key.first;
    if (static_cast<int>(m.exps.size()) > n) throw ValidationError("cannot extend to fewer variables");
    m.exps.resize(n, 0);
    out.emplace(std::make_pair(m, key.second), c);
  }
  return out;
}

LieOps<FormVec> FormHost::ops() const {
  LieOps<FormVec> o;
  o.add = [this](const FormVec& a, const FormVec& b) { return add(a, b); };
  o.scale = [this](const Rational& s, const FormVec& a) { return scale(s, a); };
  o.bracket = [this](const FormVec& a, const FormVec& b) { return bracket(a, b); };
  o.is_zero = [](const FormVec& a) { return a.empty(); };
  return o;
}

}  // namespace dgl
