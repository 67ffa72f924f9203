#include "dgl/lie.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dgl {

namespace {

const SparseRow kNone;

using Poly = std::map<std::vector<int>, Rational>;

void row_add(SparseRow& r, int k, const Rational& v) {
  if (v == 0) return;
  auto [it, ins] = r.try_emplace(k, 0);
  it->second += v;
  if (it->second == 0) r.erase(it);
}

Vec to_vec(const SparseRow& r, int n) {
  Vec v = zero_vec(n);
  for (const auto& [k, x] : r) v[k] = x;
  return v;
}

BracketTable complete_antisymmetric(const GradedSpace& space, const BracketTable& table) {
  BracketTable out;
  int n = space.total_dim();
  for (const auto& [key, row] : table) {
    auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n) throw ValidationError("bracket index out of range");
    SparseRow r;
    for (const auto& [k, v] : row) row_add(r, k, v);
    if (r.empty()) continue;
    int s = -koszul(space.degree_of(i), space.degree_of(j));
    SparseRow flipped;
    for (const auto& [k, v] : r) flipped[k] = v * s;
    auto sw = out.find({j, i});
    if (sw != out.end() && sw->second != flipped)
      throw ValidationError("bracket table conflicts with graded antisymmetry at (" + space.label_of(i) + ", " +
                            space.label_of(j) + ")");
    out[{i, j}] = r;
    out[{j, i}] = flipped;
  }
  return out;
}

}  // namespace

DgLieAlgebra::DgLieAlgebra(CochainComplex complex, BracketTable bracket) : complex_(std::move(complex)) {
  bracket_ = complete_antisymmetric(complex_.space(), bracket);
  init();
  auto cert = verify_dgla(*this);
  if (!cert.ok) throw ValidationError("not a dg Lie algebra: " + cert.violation);
}

DgLieAlgebra DgLieAlgebra::unchecked(CochainComplex complex, BracketTable bracket) {
  DgLieAlgebra g;
  g.complex_ = std::move(complex);
  g.bracket_ = std::move(bracket);
  g.init();
  return g;
}

DgLieAlgebra DgLieAlgebra::abelian(CochainComplex complex) { return DgLieAlgebra(std::move(complex), {}); }

void DgLieAlgebra::init() {
  degrees_.clear();
  index_.clear();
  int n = space().total_dim();
  for (int i = 0; i < n; ++i) {
    degrees_.push_back(space().degree_of(i));
    index_[space().label_of(i)] = i;
  }
  total_d_ = complex_.total_differential();
}

int DgLieAlgebra::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ValidationError("unknown label '" + label + "'");
  return it->second;
}

const SparseRow& DgLieAlgebra::bracket_basis(int i, int j) const {
  auto it = bracket_.find({i, j});
  return it == bracket_.end() ? kNone : it->second;
}

Vec DgLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec out = zero();
  std::vector<int> nx, ny;
  for (int i = 0; i < dim(); ++i) {
    if (x[i] != 0) nx.push_back(i);
    if (y[i] != 0) ny.push_back(i);
  }
  for (int i : nx)
    for (int j : ny)
      for (const auto& [k, v] : bracket_basis(i, j)) out[k] += x[i] * y[j] * v;
  return out;
}

Vec DgLieAlgebra::d(const Vec& x) const { return total_d_.apply(x); }

Vec DgLieAlgebra::element(const std::map<std::string, Rational>& coeffs) const {
  Vec v = zero();
  for (const auto& [l, c] : coeffs) v[index(l)] += c;
  return v;
}

std::vector<int> DgLieAlgebra::indices_in_degree(int degree) const {
  std::vector<int> out(space().dim(degree));
  std::iota(out.begin(), out.end(), space().offset(degree));
  return out;
}

Certificate verify_dgla(const DgLieAlgebra& g) {
  int n = g.dim();
  const auto& sp = g.space();
  if (auto v = complex_violation(sp, g.complex().blocks())) return {false, *v};
  auto lab = [&](int i) { return sp.label_of(i); };
  // [e_i, r] for a sparse r.
  auto br = [&](int i, const SparseRow& r) {
    SparseRow out;
    for (const auto& [m, c] : r)
      for (const auto& [k, v] : g.bracket_basis(i, m)) row_add(out, k, c * v);
    return out;
  };
  auto brl = [&](const SparseRow& l, int j) {
    SparseRow out;
    for (const auto& [m, c] : l)
      for (const auto& [k, v] : g.bracket_basis(m, j)) row_add(out, k, c * v);
    return out;
  };
  const SparseMatrix& d = g.total_differential();
  auto drow = [&](int i) {
    SparseRow out;
    for (int r = 0; r < n; ++r) {
      Rational v = d.get(r, i);
      if (v != 0) out[r] = v;
    }
    return out;
  };
  std::vector<SparseRow> dcol(n);
  for (int i = 0; i < n; ++i) dcol[i] = drow(i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& ij = g.bracket_basis(i, j);
      for (const auto& [k, v] : ij)
        if (g.degree(k) != g.degree(i) + g.degree(j))
          return {false, "bracket [" + lab(i) + "," + lab(j) + "] has wrong degree"};
      SparseRow flipped;
      for (const auto& [k, v] : g.bracket_basis(j, i)) flipped[k] = -koszul(g.degree(i), g.degree(j)) * v;
      if (flipped != ij) return {false, "antisymmetry fails for (" + lab(i) + ", " + lab(j) + ")"};
      // d[x,y] = [dx,y] + (−1)^{|x|}[x,dy]
      SparseRow lhs;
      for (const auto& [k, v] : ij)
        for (const auto& [m, w] : dcol[k]) row_add(lhs, m, v * w);
      SparseRow rhs = brl(dcol[i], j);
      for (const auto& [k, v] : br(i, dcol[j])) row_add(rhs, k, parity_sign(g.degree(i)) * v);
      if (lhs != rhs) return {false, "Leibniz rule fails for (" + lab(i) + ", " + lab(j) + ")"};
    }
  // [x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& ij = g.bracket_basis(i, j);
      for (int k = 0; k < n; ++k) {
        SparseRow lhs = br(i, g.bracket_basis(j, k));
        SparseRow rhs = brl(ij, k);
        for (const auto& [m, v] : br(j, g.bracket_basis(i, k))) row_add(rhs, m, koszul(g.degree(i), g.degree(j)) * v);
        if (lhs != rhs) return {false, "Jacobi identity fails for (" + lab(i) + ", " + lab(j) + ", " + lab(k) + ")"};
      }
    }
  return {};
}

Certificate verify_lie_map(const DgLieAlgebra& source, const DgLieAlgebra& target, const SparseMatrix& f) {
  if (f.rows() != target.dim() || f.cols() != source.dim()) return {false, "map has wrong shape"};
  for (int j = 0; j < source.dim(); ++j)
    for (int i = 0; i < target.dim(); ++i)
      if (f.get(i, j) != 0 && target.degree(i) != source.degree(j))
        return {false, "map does not preserve degree at " + source.label(j)};
  for (int j = 0; j < source.dim(); ++j) {
    Vec e = unit_vec(source.dim(), j);
    if (target.d(f.apply(e)) != f.apply(source.d(e)))
      return {false, "map does not commute with d at " + source.label(j)};
  }
  for (int i = 0; i < source.dim(); ++i)
    for (int j = 0; j < source.dim(); ++j) {
      Vec ei = unit_vec(source.dim(), i), ej = unit_vec(source.dim(), j);
      if (f.apply(source.bracket(ei, ej)) != target.bracket(f.apply(ei), f.apply(ej)))
        return {false, "map does not preserve [" + source.label(i) + "," + source.label(j) + "]"};
    }
  return {};
}

// ---------------------------------------------------------------------------
// Free Lie algebras

namespace {

std::vector<std::vector<int>> lyndon_words(int k, int max_len) {
  // Duval's generation in lexicographic order.
  std::vector<std::vector<int>> out;
  if (k == 0) return out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    out.push_back(w);
    std::size_t m = w.size();
    while (static_cast<int>(w.size()) < max_len) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  return out;
}

bool is_lyndon(const std::vector<int>& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::vector<int> suffix(w.begin() + i, w.end());
    if (!(w < suffix)) return false;
  }
  return !w.empty();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      std::vector<int> w = u;
      w.insert(w.end(), v.begin(), v.end());
      auto& slot = out[w];
      slot += x * y;
      if (slot == 0) out.erase(w);
    }
  return out;
}

Poly poly_commutator(const Poly& a, int da, const Poly& b, int db) {
  Poly out = poly_mul(a, b);
  int s = koszul(da, db);
  for (const auto& [w, v] : poly_mul(b, a)) {
    auto& slot = out[w];
    slot -= s * v;
    if (slot == 0) out.erase(w);
  }
  return out;
}

}  // namespace

long witt_dimension(int generators, int weight) {
  auto mobius = [](int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    if (n > 1) m = -m;
    return m;
  };
  long total = 0;
  for (int d = 1; d <= weight; ++d)
    if (weight % d == 0) {
      long pw = 1;
      for (int i = 0; i < weight / d; ++i) pw *= generators;
      total += mobius(d) * pw;
    }
  return total / weight;
}

namespace {

// Per-weight coordinate extraction for Lie elements of the tensor algebra.
struct WeightSolver {
  std::map<std::vector<int>, int> word_index;
  std::vector<int> rows;      // selected word indices
  SparseMatrix inv;           // basis-size square inverse on the selected rows
  std::vector<int> members;   // global basis indices of this weight
  std::vector<std::vector<int>> word_of;
};

}  // namespace

namespace {

std::map<int, WeightSolver> build_solvers(const std::vector<Poly>& words, const std::vector<int>& weight, int max_weight) {
  std::map<int, WeightSolver> out;
  for (int w = 1; w <= max_weight; ++w) {
    WeightSolver s;
    for (std::size_t b = 0; b < words.size(); ++b)
      if (weight[b] == w) {
        s.members.push_back(static_cast<int>(b));
        for (const auto& [word, v] : words[b]) s.word_index.try_emplace(word, static_cast<int>(s.word_index.size()));
      }
    if (s.members.empty()) continue;
    s.word_of.resize(s.word_index.size());
    for (const auto& [word, k] : s.word_index) s.word_of[k] = word;
    SparseMatrix m(static_cast<int>(s.word_index.size()), static_cast<int>(s.members.size()));
    for (std::size_t c = 0; c < s.members.size(); ++c)
      for (const auto& [word, v] : words[s.members[c]]) m.set(s.word_index.at(word), static_cast<int>(c), v);
    if (rank(m) != m.cols()) throw std::logic_error("free Lie basis candidates are dependent in weight " + std::to_string(w));
    s.rows = independent_columns(m.transpose());
    s.inv = *inverse(m.select_rows(s.rows));
    out.emplace(w, std::move(s));
  }
  return out;
}

}  // namespace

FreeLieTruncated free_lie(const GradedSpace& generators, int max_weight) {
  if (max_weight < 1) throw ValidationError("free_lie: weight bound must be at least 1");
  int ng = generators.total_dim();
  std::vector<int> gdeg(ng);
  for (int g = 0; g < ng; ++g) gdeg[g] = generators.degree_of(g);

  struct Cand {
    Poly poly;
    int weight, degree;
    std::pair<int, int> factors;  // internal indices or (-1, generator)
    std::string label;
  };
  std::vector<Cand> cands;
  std::map<std::vector<int>, int> lyndon_index;
  auto words = lyndon_words(ng, max_weight);
  std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& w : words) {
    Cand c;
    c.weight = static_cast<int>(w.size());
    c.degree = 0;
    for (int x : w) c.degree += gdeg[x];
    if (w.size() == 1) {
      c.poly = {{w, 1}};
      c.factors = {-1, w[0]};
      c.label = generators.label_of(w[0]);
    } else {
      // Standard factorization: v is the longest proper Lyndon suffix.
      std::size_t split = 1;
      for (; split < w.size(); ++split)
        if (is_lyndon(std::vector<int>(w.begin() + split, w.end()))) break;
      int u = lyndon_index.at(std::vector<int>(w.begin(), w.begin() + split));
      int v = lyndon_index.at(std::vector<int>(w.begin() + split, w.end()));
      c.poly = poly_commutator(cands[u].poly, cands[u].degree, cands[v].poly, cands[v].degree);
      c.factors = {u, v};
      c.label = "[" + cands[u].label + "," + cands[v].label + "]";
    }
    lyndon_index[w] = static_cast<int>(cands.size());
    cands.push_back(std::move(c));
  }
  std::size_t nlyndon = cands.size();
  for (std::size_t u = 0; u < nlyndon; ++u)
    if ((cands[u].degree & 1) && 2 * cands[u].weight <= max_weight) {
      Cand c;
      c.weight = 2 * cands[u].weight;
      c.degree = 2 * cands[u].degree;
      c.poly = poly_commutator(cands[u].poly, cands[u].degree, cands[u].poly, cands[u].degree);
      c.factors = {static_cast<int>(u), static_cast<int>(u)};
      c.label = "[" + cands[u].label + "," + cands[u].label + "]";
      cands.push_back(std::move(c));
    }
  // Global order: by degree, then weight, then construction order.
  std::vector<int> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cands[a].degree != cands[b].degree ? cands[a].degree < cands[b].degree : cands[a].weight < cands[b].weight;
  });
  std::vector<int> global(cands.size());
  for (std::size_t g = 0; g < order.size(); ++g) global[order[g]] = static_cast<int>(g);

  FreeLieTruncated f;
  f.generators = generators;
  f.max_weight = max_weight;
  std::map<int, std::vector<std::string>> comps;
  for (int idx : order) {
    const auto& c = cands[idx];
    comps[c.degree].push_back(c.label);
    f.weight.push_back(c.weight);
    f.words.push_back(c.poly);
    f.factors.push_back(c.factors.first < 0 ? c.factors : std::make_pair(global[c.factors.first], global[c.factors.second]));
  }
  GradedSpace space(comps);
  int n = static_cast<int>(cands.size());
  auto solvers = build_solvers(f.words, f.weight, max_weight);
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = space.degree_of(i);
  BracketTable table;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int w = f.weight[i] + f.weight[j];
      if (w > max_weight) continue;
      Poly p = poly_commutator(f.words[i], deg[i], f.words[j], deg[j]);
      if (p.empty()) continue;
      const auto& s = solvers.at(w);
      Vec rhs = zero_vec(s.rows.size());
      for (std::size_t r = 0; r < s.rows.size(); ++r) {
        auto it = p.find(s.word_of[s.rows[r]]);
        if (it != p.end()) rhs[r] = it->second;
      }
      Vec coords = s.inv.apply(rhs);
      SparseRow row;
      for (std::size_t c = 0; c < coords.size(); ++c)
        if (coords[c] != 0) row[s.members[c]] = coords[c];
      if (!row.empty()) table[{i, j}] = row;
    }
  f.lie = DgLieAlgebra::unchecked(CochainComplex::zero_differential(space), complete_antisymmetric(space, table));
  return f;
}

std::vector<int> FreeLieTruncated::weight_dims() const {
  std::vector<int> out(max_weight, 0);
  for (int w : weight) ++out[w - 1];
  return out;
}

int FreeLieTruncated::generator_index(int g) const {
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].first < 0 && factors[i].second == g) return static_cast<int>(i);
  throw std::out_of_range("generator index");
}

Vec FreeLieTruncated::express(const std::map<std::vector<int>, Rational>& poly) const {
  Vec out = zero_vec(lie.dim());
  std::map<int, Poly> parts;
  for (const auto& [w, v] : poly)
    if (static_cast<int>(w.size()) <= max_weight) parts[static_cast<int>(w.size())][w] = v;
  for (const auto& [wt, part] : parts) {
    std::vector<int> members;
    std::map<std::vector<int>, int> idx;
    for (int b = 0; b < lie.dim(); ++b)
      if (weight[b] == wt) {
        members.push_back(b);
        for (const auto& [word, v] : words[b]) idx.try_emplace(word, static_cast<int>(idx.size()));
      }
    for (const auto& [word, v] : part) idx.try_emplace(word, static_cast<int>(idx.size()));
    SparseMatrix m(static_cast<int>(idx.size()), static_cast<int>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c)
      for (const auto& [word, v] : words[members[c]]) m.set(idx.at(word), static_cast<int>(c), v);
    Vec rhs = zero_vec(idx.size());
    for (const auto& [word, v] : part) rhs[idx.at(word)] = v;
    auto sol = solve_affine(m, rhs);
    if (!sol) throw ValidationError("polynomial is not a Lie element of weight " + std::to_string(wt));
    for (std::size_t c = 0; c < members.size(); ++c) out[members[c]] = sol->particular[c];
  }
  return out;
}

SparseMatrix FreeLieTruncated::derivation(const std::vector<Vec>& generator_images, int degree) const {
  int n = lie.dim();
  std::vector<Vec> img(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] < weight[b]; });
  for (int b : order) {
    auto [u, v] = factors[b];
    if (u < 0) {
      img[b] = generator_images.at(v);
      continue;
    }
    Vec eu = unit_vec(n, u), ev = unit_vec(n, v);
    img[b] = add(lie.bracket(img[u], ev), scale(koszul(degree, lie.degree(u)), lie.bracket(eu, img[v])));
  }
  return SparseMatrix::from_columns(n, img);
}

SparseMatrix FreeLieTruncated::extend_morphism(const DgLieAlgebra& target, const std::vector<Vec>& generator_images) const {
  int n = lie.dim();
  std::vector<Vec> img(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] < weight[b]; });
  for (int b : order) {
    auto [u, v] = factors[b];
    img[b] = u < 0 ? generator_images.at(v) : target.bracket(img[u], img[v]);
  }
  return SparseMatrix::from_columns(target.dim(), img);
}

FreeLieTruncated FreeLieTruncated::with_differential(const std::vector<Vec>& generator_images) const {
  FreeLieTruncated out = *this;
  SparseMatrix d = derivation(generator_images, 1);
  const auto& sp = lie.space();
  out.lie = DgLieAlgebra(CochainComplex(sp, degree_blocks(sp, sp, d, 1)), lie.table());
  return out;
}

// ---------------------------------------------------------------------------
// Nilpotency

std::vector<std::vector<Vec>> lower_central_series(const DgLieAlgebra& g) {
  int n = g.dim();
  std::vector<std::vector<Vec>> out;
  std::vector<Vec> cur;
  for (int i = 0; i < n; ++i) cur.push_back(unit_vec(n, i));
  while (!cur.empty()) {
    out.push_back(cur);
    std::vector<Vec> next;
    for (int i = 0; i < n; ++i)
      for (const auto& v : cur) {
        Vec b = g.bracket(unit_vec(n, i), v);
        if (!is_zero(b)) next.push_back(b);
      }
    std::vector<Vec> basis = extend_basis({}, next);
    if (basis.size() == cur.size()) break;  // stable and nonzero
    cur = basis;
  }
  return out;
}

std::optional<int> nilpotency_index(const DgLieAlgebra& g) {
  auto lcs = lower_central_series(g);
  if (g.dim() == 0) return 1;
  // Stopped early on a stable nonzero term iff the last bracket step did not shrink.
  const auto& last = lcs.back();
  for (int i = 0; i < g.dim(); ++i)
    for (const auto& v : last)
      if (!is_zero(g.bracket(unit_vec(g.dim(), i), v))) return std::nullopt;
  return static_cast<int>(lcs.size());
}

LcsBasis lcs_rebase(const DgLieAlgebra& g) {
  auto idx = nilpotency_index(g);
  if (!idx) throw ValidationError("algebra is not nilpotent");
  auto lcs = lower_central_series(g);
  int n = g.dim(), c = *idx;
  std::map<int, std::vector<std::pair<Vec, int>>> per_degree;  // degree -> (vector, weight)
  for (int d : g.space().degrees()) {
    std::vector<Vec> chosen;
    std::vector<std::pair<Vec, int>> list;
    for (int k = c; k >= 1; --k) {
      std::vector<Vec> cand;
      for (const auto& v : lcs[k - 1]) {
        bool in_degree = true;
        for (int i = 0; i < n; ++i)
          if (v[i] != 0 && g.degree(i) != d) in_degree = false;
        if (in_degree && !is_zero(v)) cand.push_back(v);
      }
      for (auto& v : extend_basis(chosen, cand)) {
        chosen.push_back(v);
        list.emplace_back(v, k);
      }
    }
    std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    per_degree[d] = list;
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(g.label(i));
  std::map<int, std::vector<std::string>> comps;
  std::vector<Vec> cols;
  LcsBasis out;
  for (const auto& [d, list] : per_degree)
    for (const auto& [v, k] : list) {
      int u = unit_index(v);
      comps[d].push_back(u >= 0 ? labels[u] : combination_label(v, labels));
      cols.push_back(v);
      out.weight.push_back(k);
    }
  out.to_original = SparseMatrix::from_columns(n, cols);
  out.from_original = *inverse(out.to_original);
  GradedSpace space(comps);
  BracketTable table;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec b = out.from_original.apply(g.bracket(cols[i], cols[j]));
      SparseRow r;
      for (int k = 0; k < n; ++k)
        if (b[k] != 0) r[k] = b[k];
      if (!r.empty()) table[{i, j}] = r;
    }
  SparseMatrix d = out.from_original * g.total_differential() * out.to_original;
  out.lie = DgLieAlgebra(CochainComplex(space, degree_blocks(space, space, d, 1)), table);
  out.nilpotency = c;
  return out;
}

FilteredComplex lcs_filtration(const LcsBasis& b) {
  std::map<int, std::vector<int>> w;
  for (int i = 0; i < b.lie.dim(); ++i) w[b.lie.degree(i)].push_back(b.weight[i]);
  return FilteredComplex(b.lie.complex(), w, 1);
}

std::optional<std::string> lie_filtration_violation(const DgLieAlgebra& g, const std::vector<int>& weight) {
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      for (const auto& [k, v] : g.bracket_basis(i, j))
        if (weight[k] > weight[i] + weight[j])
          return "[" + g.label(i) + "," + g.label(j) + "] leaves level " + std::to_string(weight[i] + weight[j]);
  const auto& d = g.total_differential();
  for (int r = 0; r < d.rows(); ++r)
    for (const auto& [c, v] : d.row(r))
      if (weight[r] > weight[c]) return "d(" + g.label(c) + ") leaves level " + std::to_string(weight[c]);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

DgLieAlgebra tensor_cdga_lie(const Cdga& b, const DgLieAlgebra& g) {
  CochainComplex c = tensor(b.complex(), g.complex());
  const auto& sp = c.space();
  int nb = b.dim(), ng = g.dim();
  std::vector<std::vector<int>> at(nb, std::vector<int>(ng));
  for (int i = 0; i < nb; ++i)
    for (int x = 0; x < ng; ++x) {
      auto f = sp.find(b.space().label_of(i) + "*" + g.label(x));
      at[i][x] = sp.offset(f->first) + f->second;
    }
  BracketTable table;
  for (int i = 0; i < nb; ++i)
    for (int x = 0; x < ng; ++x)
      for (int j = 0; j < nb; ++j) {
        const auto& ab = b.product_basis(i, j);
        if (ab.empty()) continue;
        for (int y = 0; y < ng; ++y) {
          const auto& xy = g.bracket_basis(x, y);
          if (xy.empty()) continue;
          int s = koszul(g.degree(x), b.degree(j));
          SparseRow row;
          for (const auto& [k, u] : ab)
            for (const auto& [z, v] : xy) row_add(row, at[k][z], s * u * v);
          if (!row.empty()) table[{at[i][x], at[j][y]}] = row;
        }
      }
  return DgLieAlgebra(c, table);
}

namespace {

DgLieAlgebra sum_with_action(const DgLieAlgebra& g, const DgLieAlgebra& h, const std::vector<SparseMatrix>* action) {
  std::map<int, std::vector<std::string>> comps;
  for (const auto& [d, l] : g.space().components()) comps[d] = l;
  for (const auto& [d, l] : h.space().components()) comps[d].insert(comps[d].end(), l.begin(), l.end());
  GradedSpace sp(comps);
  std::vector<int> gi(g.dim()), hi(h.dim());
  for (int i = 0; i < g.dim(); ++i) {
    auto f = sp.find(g.label(i));
    gi[i] = sp.offset(f->first) + f->second;
  }
  for (int i = 0; i < h.dim(); ++i) {
    auto f = sp.find(h.label(i));
    hi[i] = sp.offset(f->first) + f->second;
    if (sp.label_of(hi[i]) != h.label(i) || std::find(gi.begin(), gi.end(), hi[i]) != gi.end())
      throw ValidationError("summands share the label '" + h.label(i) + "'");
  }
  int n = sp.total_dim();
  BracketTable table;
  auto embed = [&](const std::vector<int>& m, const SparseRow& r) {
    SparseRow out;
    for (const auto& [k, v] : r) out[m[k]] = v;
    return out;
  };
  for (const auto& [key, r] : g.table()) table[{gi[key.first], gi[key.second]}] = embed(gi, r);
  for (const auto& [key, r] : h.table()) table[{hi[key.first], hi[key.second]}] = embed(hi, r);
  if (action) {
    if (static_cast<int>(action->size()) != g.dim()) throw ValidationError("action needs one matrix per basis vector of g");
    for (int x = 0; x < g.dim(); ++x) {
      const auto& m = (*action)[x];
      if (m.rows() != h.dim() || m.cols() != h.dim()) throw ValidationError("action matrix has wrong shape");
      for (int y = 0; y < h.dim(); ++y) {
        SparseRow r;
        for (int k = 0; k < h.dim(); ++k) {
          Rational v = m.get(k, y);
          if (v != 0) r[hi[k]] = v;
        }
        if (!r.empty()) table[{gi[x], hi[y]}] = r;
      }
    }
  }
  SparseMatrix d(n, n);
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) d.set(gi[i], gi[j], g.total_differential().get(i, j));
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j) d.set(hi[i], hi[j], h.total_differential().get(i, j));
  CochainComplex c(sp, degree_blocks(sp, sp, d, 1));
  try {
    return DgLieAlgebra(c, table);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("invalid action: ") + e.what());
  }
}

}  // namespace

DgLieAlgebra semidirect(const DgLieAlgebra& g, const DgLieAlgebra& h, const std::vector<SparseMatrix>& action) {
  return sum_with_action(g, h, &action);
}

DgLieAlgebra direct_sum(const DgLieAlgebra& g, const DgLieAlgebra& h) { return sum_with_action(g, h, nullptr); }

std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    // Σ_{k=0}^{m} C(m+1, k) B_k = 0
    Rational s = 0;
    mpz_class binom = 1;
    for (int k = 0; k < m; ++k) {
      s += Rational(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -s / Rational(binom);
  }
  return b;
}

LieOps<Vec> lie_ops(const DgLieAlgebra& g) {
  return {[](const Vec& a, const Vec& b) { return add(a, b); },
          [](const Rational& s, const Vec& a) { return scale(s, a); },
          [&g](const Vec& a, const Vec& b) { return g.bracket(a, b); }, [](const Vec& a) { return is_zero(a); }};
}

GaugeElement exp_element(const DgLieAlgebra& g, const Vec& y) {
  for (int i = 0; i < g.dim(); ++i)
    if (y[i] != 0 && g.degree(i) != 0) throw ValidationError("gauge elements must have degree 0");
  return {y};
}

GaugeElement group_multiply(const DgLieAlgebra& g, const GaugeElement& a, const GaugeElement& b, int nilpotency) {
  return {bch(a.log, b.log, nilpotency, lie_ops(g))};
}

GaugeElement group_inverse(const GaugeElement& a) { return {scale(-1, a.log)}; }

}  // namespace dgl
