#include "dgl/graded.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dgl {

GradedSpace::GradedSpace(std::map<int, std::vector<std::string>> components) {
  for (auto& [deg, labels] : components) {
    std::set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw ValidationError("duplicate basis label '" + l + "' in degree " + std::to_string(deg));
    if (!labels.empty()) components_[deg] = std::move(labels);
  }
}

GradedSpace GradedSpace::single(int degree, std::vector<std::string> labels) {
  return GradedSpace({{degree, std::move(labels)}});
}

int GradedSpace::dim(int degree) const {
  auto it = components_.find(degree);
  return it == components_.end() ? 0 : static_cast<int>(it->second.size());
}

int GradedSpace::total_dim() const {
  int n = 0;
  for (const auto& [d, l] : components_) n += static_cast<int>(l.size());
  return n;
}

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> out;
  for (const auto& [d, l] : components_) out.push_back(d);
  return out;
}

const std::vector<std::string>& GradedSpace::labels(int degree) const {
  static const std::vector<std::string> empty;
  auto it = components_.find(degree);
  return it == components_.end() ? empty : it->second;
}

std::optional<std::pair<int, int>> GradedSpace::find(const std::string& label) const {
  for (const auto& [d, labels] : components_)
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return std::make_pair(d, static_cast<int>(i));
  return std::nullopt;
}

int GradedSpace::offset(int degree) const {
  int n = 0;
  for (const auto& [d, l] : components_) {
    if (d >= degree) break;
    n += static_cast<int>(l.size());
  }
  return n;
}

int GradedSpace::degree_of(int global) const {
  int n = 0;
  for (const auto& [d, l] : components_) {
    n += static_cast<int>(l.size());
    if (global < n) return d;
  }
  throw std::out_of_range("global index out of range");
}

const std::string& GradedSpace::label_of(int global) const {
  int d = degree_of(global);
  return components_.at(d).at(global - offset(d));
}

std::optional<std::string> complex_violation(const GradedSpace& space, const std::map<int, SparseMatrix>& diff) {
  for (const auto& [d, m] : diff) {
    if (m.rows() != space.dim(d + 1) || m.cols() != space.dim(d))
      return "differential block in degree " + std::to_string(d) + " has shape " + std::to_string(m.rows()) + "x" +
             std::to_string(m.cols()) + ", expected " + std::to_string(space.dim(d + 1)) + "x" +
             std::to_string(space.dim(d));
  }
  for (const auto& [d, m] : diff) {
    auto next = diff.find(d + 1);
    if (next == diff.end()) continue;
    SparseMatrix sq = next->second * m;
    if (!sq.is_zero()) return "d∘d ≠ 0 starting in degree " + std::to_string(d);
  }
  return std::nullopt;
}

CochainComplex::CochainComplex(GradedSpace space, std::map<int, SparseMatrix> diff) : space_(std::move(space)) {
  for (auto& [d, m] : diff)
    if (!m.is_zero() || m.rows() != space_.dim(d + 1) || m.cols() != space_.dim(d)) diff_[d] = std::move(m);
  if (auto v = complex_violation(space_, diff_)) throw ValidationError("not a cochain complex: " + *v);
  for (auto it = diff_.begin(); it != diff_.end();) it = it->second.is_zero() ? diff_.erase(it) : std::next(it);
}

CochainComplex CochainComplex::zero_differential(GradedSpace space) { return CochainComplex(std::move(space), {}); }

SparseMatrix CochainComplex::diff(int degree) const {
  auto it = diff_.find(degree);
  if (it != diff_.end()) return it->second;
  return SparseMatrix(space_.dim(degree + 1), space_.dim(degree));
}

SparseMatrix CochainComplex::total_differential() const {
  int n = space_.total_dim();
  SparseMatrix t(n, n);
  for (const auto& [d, m] : diff_) {
    int ro = space_.offset(d + 1), co = space_.offset(d);
    for (int i = 0; i < m.rows(); ++i)
      for (const auto& [j, v] : m.row(i)) t.set(ro + i, co + j, v);
  }
  return t;
}

bool CochainComplex::operator==(const CochainComplex& o) const { return space_ == o.space_ && diff_ == o.diff_; }

SparseMatrix ChainMap::block(int degree) const {
  auto it = blocks.find(degree);
  if (it != blocks.end()) return it->second;
  return SparseMatrix(target.dim(degree), source.dim(degree));
}

bool ChainMap::commutes() const {
  std::set<int> degs;
  for (int d : source.space().degrees()) degs.insert(d), degs.insert(d - 1);
  for (int d : target.space().degrees()) degs.insert(d), degs.insert(d - 1);
  for (int d : degs) {
    auto b = block(d);
    if (b.rows() != target.dim(d) || b.cols() != source.dim(d)) return false;
    if (!(target.diff(d) * b == block(d + 1) * source.diff(d))) return false;
  }
  return true;
}

Cohomology cohomology_at(const CochainComplex& c, int degree) {
  Cohomology h;
  if (c.dim(degree) == 0) return h;
  auto cycles = kernel_basis(c.diff(degree));
  auto boundaries = column_space_basis(c.diff(degree - 1));
  h.representatives = extend_basis(boundaries, cycles);
  h.dim = static_cast<int>(h.representatives.size());
  return h;
}

std::map<int, int> cohomology_dims(const CochainComplex& c) {
  std::map<int, int> out;
  for (int d : c.space().degrees()) out[d] = cohomology_at(c, d).dim;
  return out;
}

CochainComplex shift(const CochainComplex& c, int n) {
  std::map<int, std::vector<std::string>> comps;
  for (const auto& [d, l] : c.space().components()) comps[d - n] = l;
  std::map<int, SparseMatrix> diff;
  for (const auto& [d, m] : c.blocks()) diff[d - n] = (n % 2 == 0) ? m : m.scaled(-1);
  return CochainComplex(GradedSpace(std::move(comps)), std::move(diff));
}

CochainComplex tensor(const CochainComplex& c, const CochainComplex& e) {
  // Basis in total degree n ordered by (deg of c-factor, c position, e position).
  std::map<int, std::vector<std::string>> comps;
  std::map<std::tuple<int, int, int, int>, int> where;  // (dc, de, i, j) -> position in degree dc+de
  for (const auto& [dc, lc] : c.space().components())
    for (const auto& [de, le] : e.space().components())
      for (std::size_t i = 0; i < lc.size(); ++i)
        for (std::size_t j = 0; j < le.size(); ++j) {
          auto& slot = comps[dc + de];
          where[{dc, de, static_cast<int>(i), static_cast<int>(j)}] = static_cast<int>(slot.size());
          slot.push_back(lc[i] + "*" + le[j]);
        }
  GradedSpace space(comps);
  std::map<int, SparseMatrix> diff;
  for (const auto& [n, l] : comps) diff.emplace(n, SparseMatrix(space.dim(n + 1), space.dim(n)));
  for (const auto& [key, pos] : where) {
    auto [dc, de, i, j] = key;
    auto& m = diff.at(dc + de);
    SparseMatrix dcm = c.diff(dc);
    for (int r = 0; r < dcm.rows(); ++r) {
      Rational v = dcm.get(r, i);
      if (v != 0) m.add_to(where.at({dc + 1, de, r, j}), pos, v);
    }
    SparseMatrix dem = e.diff(de);
    int sign = parity_sign(dc);
    for (int r = 0; r < dem.rows(); ++r) {
      Rational v = dem.get(r, j);
      if (v != 0) m.add_to(where.at({dc, de + 1, i, r}), pos, v * sign);
    }
  }
  return CochainComplex(std::move(space), std::move(diff));
}

CochainComplex truncate_good(const CochainComplex& c) {
  std::map<int, std::vector<std::string>> comps;
  std::map<int, SparseMatrix> diff;
  for (const auto& [d, l] : c.space().components())
    if (d < 0) comps[d] = l;
  for (const auto& [d, m] : c.blocks())
    if (d < -1) diff[d] = m;

  SparseMatrix d0 = c.diff(0);
  auto ker = kernel_basis(d0);
  const auto& labels0 = c.space().labels(0);
  // kernel_basis lists one vector per free (non-pivot) column of the RREF, in order.
  std::vector<bool> is_pivot(d0.cols(), false);
  for (int p : row_reduce(d0).pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < d0.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  std::vector<std::string> klabels;
  for (std::size_t k = 0; k < ker.size(); ++k) {
    int nonzeros = 0;
    for (const auto& x : ker[k])
      if (x != 0) ++nonzeros;
    klabels.push_back(nonzeros == 1 ? labels0[free_cols[k]] : "ker(" + labels0[free_cols[k]] + ")");
  }
  if (!klabels.empty()) comps[0] = klabels;
  GradedSpace space(comps);
  if (space.dim(-1) > 0 && !klabels.empty()) {
    SparseMatrix dm1 = c.diff(-1);  // lands in ker d0; coordinates read off the free columns
    SparseMatrix m(static_cast<int>(klabels.size()), space.dim(-1));
    for (std::size_t k = 0; k < free_cols.size(); ++k)
      for (int j = 0; j < dm1.cols(); ++j) m.set(static_cast<int>(k), j, dm1.get(free_cols[k], j));
    diff[-1] = m;
  }
  return CochainComplex(std::move(space), std::move(diff));
}

std::vector<std::vector<int>> sym_monomials(const GradedSpace& v, int n) {
  std::vector<std::vector<int>> out;
  int dim = v.total_dim();
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < dim; ++i) {
      bool odd = v.degree_of(i) & 1;
      if (odd && !cur.empty() && cur.back() == i) continue;
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

GradedSpace sym_power(const GradedSpace& v, int n) {
  if (n < 0) throw std::invalid_argument("negative symmetric power");
  std::map<int, std::vector<std::string>> comps;
  for (const auto& mono : sym_monomials(v, n)) {
    int deg = 0;
    std::string label;
    for (int i : mono) {
      deg += v.degree_of(i);
      if (!label.empty()) label += ".";
      label += v.label_of(i);
    }
    comps[deg].push_back(mono.empty() ? "1" : label);
  }
  return GradedSpace(comps);
}

DoldKanData dold_kan_truncated(const CochainComplex& c, int levels) {
  for (int d : c.space().degrees())
    if (d > 0) throw ValidationError("Dold-Kan input must vanish in positive degrees (degree " + std::to_string(d) + ")");
  DoldKanData out;
  for (int n = 0; n <= levels; ++n) {
    // K_n = ⊕_{[n]↠[k]} N_k with N_k = C^{-k}; there are binom(n, k) surjections.
    long total = 0, binom = 1;
    for (int k = 0; k <= n; ++k) {
      total += binom * c.dim(-k);
      binom = binom * (n - k) / (k + 1);
    }
    out.level_dims.push_back(total);
    out.pi_dims.push_back(cohomology_at(c, -n).dim);
  }
  return out;
}

CochainComplex permute_basis(const CochainComplex& c, const std::map<int, std::vector<int>>& perm) {
  // perm[d][new] = old
  std::map<int, std::vector<std::string>> comps;
  for (const auto& [d, l] : c.space().components()) {
    auto it = perm.find(d);
    std::vector<std::string> nl(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) nl[i] = l[it == perm.end() ? i : it->second[i]];
    comps[d] = nl;
  }
  auto p = [&](int d, int newi) {
    auto it = perm.find(d);
    return it == perm.end() ? newi : it->second[newi];
  };
  std::map<int, SparseMatrix> diff;
  for (const auto& [d, m] : c.blocks()) {
    SparseMatrix nm(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) nm.set(i, j, m.get(p(d + 1, i), p(d, j)));
    diff[d] = nm;
  }
  return CochainComplex(GradedSpace(comps), diff);
}

}  // namespace dgl

namespace dgl {

std::string combination_label(const Vec& v, const std::vector<std::string>& labels) {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!first || v[i] < 0) out += v[i] < 0 ? "-" : "+";
    Rational a = abs(v[i]);
    if (a != 1) out += to_string(a) + " ";
    out += labels[i];
    first = false;
  }
  return "<" + out + ">";
}

int unit_index(const Vec& v) {
  int idx = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] != 1 || idx >= 0) return -1;
    idx = static_cast<int>(i);
  }
  return idx;
}

std::map<int, SparseMatrix> degree_blocks(const GradedSpace& source, const GradedSpace& target,
                                          const SparseMatrix& total, int degree) {
  std::map<int, SparseMatrix> out;
  for (int d : source.degrees()) {
    int td = d + degree;
    if (target.dim(td) == 0) continue;
    SparseMatrix b(target.dim(td), source.dim(d));
    int ro = target.offset(td), co = source.offset(d);
    for (int i = 0; i < b.rows(); ++i)
      for (const auto& [j, v] : total.row(ro + i))
        if (j >= co && j < co + b.cols()) b.set(i, j - co, v);
    for (int i = 0; i < total.rows(); ++i) {
      bool inside = i >= ro && i < ro + b.rows();
      if (inside) continue;
      for (const auto& [j, v] : total.row(i))
        if (j >= co && j < co + b.cols() && v != 0)
          throw ValidationError("map is not homogeneous of degree " + std::to_string(degree));
    }
    out[d] = b;
  }
  return out;
}

}  // namespace dgl
