#include "dgl/enveloping.hpp"

#include <algorithm>
#include <numeric>

namespace dgl {

namespace {

void term_add(UElement& x, const Word& w, const Rational& v) {
  if (v == 0) return;
  auto [it, ins] = x.try_emplace(w, 0);
  it->second += v;
  if (it->second == 0) x.erase(it);
}

}  // namespace

EnvelopingTruncated::EnvelopingTruncated(DgLieAlgebra g, int bound, std::vector<int> letter_weight)
    : g_(std::move(g)), bound_(bound), weight_(std::move(letter_weight)) {
  if (weight_.empty()) weight_.assign(g_.dim(), 1);
  if (static_cast<int>(weight_.size()) != g_.dim()) throw ValidationError("one weight per basis letter required");
  ideal_ = true;
  for (int i = 0; i < g_.dim(); ++i)
    for (int j = 0; j < g_.dim(); ++j)
      for (const auto& [k, v] : g_.bracket_basis(i, j))
        if (weight_[k] < weight_[i] + weight_[j]) ideal_ = false;
}

int EnvelopingTruncated::word_weight(const Word& w) const {
  int s = 0;
  for (int x : w) s += weight_[x];
  return s;
}

UElement EnvelopingTruncated::normal_form(const Word& w) const {
  if (word_weight(w) > bound_) return {};
  auto it = memo_.find(w);
  if (it != memo_.end()) return it->second;
  UElement out;
  std::size_t i = 0;
  while (i + 1 < w.size() && (w[i] < w[i + 1] || (w[i] == w[i + 1] && !odd(w[i])))) ++i;
  if (i + 1 >= w.size()) {
    out[w] = 1;
  } else {
    int a = w[i], b = w[i + 1];
    Word head(w.begin(), w.begin() + i), tail(w.begin() + i + 2, w.end());
    auto with_bracket = [&](const Rational& s) {
      for (const auto& [k, v] : g_.bracket_basis(a, b)) {
        Word nw = head;
        nw.push_back(k);
        nw.insert(nw.end(), tail.begin(), tail.end());
        for (const auto& [t, c] : normal_form(nw)) term_add(out, t, s * v * c);
      }
    };
    if (a == b) {
      // odd x: x·x = ½[x,x]
      with_bracket(Rational(1, 2));
    } else {
      // ab = (−1)^{|a||b|} ba + [a,b]
      Word sw = w;
      std::swap(sw[i], sw[i + 1]);
      for (const auto& [t, c] : normal_form(sw)) term_add(out, t, koszul(g_.degree(a), g_.degree(b)) * c);
      with_bracket(1);
    }
  }
  memo_.emplace(w, out);
  return out;
}

UElement EnvelopingTruncated::normal_form(const UElement& x) const {
  UElement out;
  for (const auto& [w, v] : x)
    for (const auto& [t, c] : normal_form(w)) term_add(out, t, v * c);
  return out;
}

UElement EnvelopingTruncated::multiply(const UElement& a, const UElement& b) const {
  UElement out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      for (const auto& [t, c] : normal_form(w)) term_add(out, t, x * y * c);
    }
  return out;
}

UElement EnvelopingTruncated::from_lie(const Vec& x) const {
  UElement out;
  for (int i = 0; i < g_.dim(); ++i)
    if (x[i] != 0 && weight_[i] <= bound_) out[{i}] = x[i];
  return out;
}

std::vector<Word> EnvelopingTruncated::basis() const {
  std::vector<Word> out;
  Word cur;
  auto rec = [&](auto&& self, int start, int wt) -> void {
    out.push_back(cur);
    for (int i = start; i < g_.dim(); ++i) {
      if (wt + weight_[i] > bound_) continue;
      if (!cur.empty() && cur.back() == i && odd(i)) continue;
      cur.push_back(i);
      self(self, i, wt + weight_[i]);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

std::vector<int> EnvelopingTruncated::monomial_counts() const {
  std::vector<int> out;
  for (const auto& w : basis()) {
    if (out.size() <= w.size()) out.resize(w.size() + 1, 0);
    ++out[w.size()];
  }
  return out;
}

Vec EnvelopingTruncated::coordinates(const UElement& x, const std::vector<Word>& basis) const {
  std::map<Word, int> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
  Vec v = zero_vec(basis.size());
  for (const auto& [w, c] : normal_form(x)) v[idx.at(w)] += c;
  return v;
}

Symmetrization symmetrization_map(const DgLieAlgebra& g, int bound) {
  EnvelopingTruncated u(g, bound);
  Symmetrization s;
  s.pbw_basis = u.basis();
  s.sym_basis = s.pbw_basis;  // same index set: sorted monomials with odd letters at most once
  std::vector<Vec> cols;
  for (const auto& m : s.sym_basis) {
    // (1/k!) Σ_σ ε(σ) x_{σ(1)}…x_{σ(k)}, ε the Koszul sign of the permutation.
    std::vector<int> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    UElement sum;
    Rational count = 0;
    do {
      Word w;
      for (int p : perm) w.push_back(m[p]);
      // sign: count inversions between odd letters
      int sign = 1;
      for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
          if (perm[a] > perm[b]) sign *= koszul(g.degree(m[perm[a]]), g.degree(m[perm[b]]));
      auto [it, ins] = sum.try_emplace(w, 0);
      it->second += sign;
      count += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& [w, c] : sum) c /= count;
    cols.push_back(u.coordinates(sum, s.pbw_basis));
  }
  s.matrix = SparseMatrix::from_columns(static_cast<int>(s.pbw_basis.size()), cols);
  s.filtered_bijective = true;
  for (int len = 0; len <= bound; ++len) {
    std::vector<int> sel;
    for (std::size_t i = 0; i < s.pbw_basis.size(); ++i)
      if (static_cast<int>(s.pbw_basis[i].size()) <= len) sel.push_back(static_cast<int>(i));
    SparseMatrix piece = s.matrix.select_rows(sel).select_cols(sel);
    // Filtered: columns of length <= len have no components of greater length.
    SparseMatrix outside = s.matrix.select_cols(sel);
    if (rank(piece) != static_cast<int>(sel.size()) || rank(outside) != rank(piece)) s.filtered_bijective = false;
    for (int r = 0; r < outside.rows(); ++r)
      if (static_cast<int>(s.pbw_basis[r].size()) > len && !outside.row(r).empty()) s.filtered_bijective = false;
  }
  return s;
}

DgLieAlgebra associated_graded_lie(const DgLieAlgebra& g, const std::vector<int>& weight) {
  if (auto v = lie_filtration_violation(g, weight)) throw ValidationError("not a filtration of g: " + *v);
  BracketTable table;
  for (const auto& [key, row] : g.table()) {
    SparseRow r;
    for (const auto& [k, v] : row)
      if (weight[k] == weight[key.first] + weight[key.second]) r[k] = v;
    if (!r.empty()) table[key] = r;
  }
  const auto& sp = g.space();
  SparseMatrix d = g.total_differential();
  SparseMatrix gd(d.rows(), d.cols());
  for (int r = 0; r < d.rows(); ++r)
    for (const auto& [c, v] : d.row(r))
      if (weight[r] == weight[c]) gd.set(r, c, v);
  return DgLieAlgebra(CochainComplex(sp, degree_blocks(sp, sp, gd, 1)), table);
}

std::vector<std::vector<int>> filtered_word_spans(const DgLieAlgebra& g, const std::vector<int>& weight, int max_level,
                                                  int max_length) {
  // Lengths <= max_length suffice: straightening never lengthens words, so
  // unit-weight truncation at max_length is exact here.
  EnvelopingTruncated u(g, max_length);
  auto basis = u.basis();
  std::vector<std::vector<int>> table(max_level + 1, std::vector<int>(max_length + 1, 0));
  std::vector<std::vector<std::vector<Vec>>> vecs(max_level + 1, std::vector<std::vector<Vec>>(max_length + 1));
  Word cur;
  auto rec = [&](auto&& self, int wt) -> void {
    if (wt <= max_level) {
      Vec v = u.coordinates(UElement{{cur, 1}}, basis);
      vecs[wt][cur.size()].push_back(v);
    }
    if (static_cast<int>(cur.size()) == max_length) return;
    for (int i = 0; i < g.dim(); ++i) {
      if (wt + weight[i] > max_level) continue;
      cur.push_back(i);
      self(self, wt + weight[i]);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  for (int p = 0; p <= max_level; ++p)
    for (int l = 0; l <= max_length; ++l) {
      std::vector<Vec> all;
      for (int q = 0; q <= p; ++q)
        for (int m = 0; m <= l; ++m) all.insert(all.end(), vecs[q][m].begin(), vecs[q][m].end());
      table[p][l] = span_rank(all, basis.size());
    }
  return table;
}

}  // namespace dgl
