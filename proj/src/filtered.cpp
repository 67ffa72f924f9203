#include "dgl/filtered.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace dgl {


FilteredComplex::FilteredComplex(CochainComplex total, std::map<int, std::vector<int>> weights, int floor)
    : total_(std::move(total)), floor_(floor) {
  for (int d : total_.space().degrees()) {
    auto it = weights.find(d);
    if (it == weights.end() || static_cast<int>(it->second.size()) != total_.dim(d))
      throw ValidationError("filtration weights missing or mis-sized in degree " + std::to_string(d));
    for (int w : it->second)
      if (w < floor_) throw ValidationError("filtration weight below the floor in degree " + std::to_string(d));
    weights_[d] = it->second;
  }
  for (const auto& [d, m] : total_.blocks())
    for (int r = 0; r < m.rows(); ++r)
      for (const auto& [c, v] : m.row(r))
        if (weights_.at(d + 1)[r] > weights_.at(d)[c])
          throw ValidationError("differential does not preserve the filtration: " + total_.space().labels(d)[c] +
                                " -> " + total_.space().labels(d + 1)[r]);
}

FilteredComplex FilteredComplex::trivial(CochainComplex c) {
  std::map<int, std::vector<int>> w;
  for (int d : c.space().degrees()) w[d] = std::vector<int>(c.dim(d), 0);
  return FilteredComplex(std::move(c), std::move(w), 0);
}

int FilteredComplex::ceiling() const {
  int c = floor_;
  for (const auto& [d, ws] : weights_)
    for (int w : ws) c = std::max(c, w);
  return c;
}

std::vector<int> FilteredComplex::level(int i, int degree) const {
  std::vector<int> out;
  auto it = weights_.find(degree);
  if (it == weights_.end()) return out;
  for (std::size_t p = 0; p < it->second.size(); ++p)
    if (it->second[p] <= i) out.push_back(static_cast<int>(p));
  return out;
}

CochainComplex FilteredComplex::level_complex(int i) const {
  std::map<int, std::vector<std::string>> comps;
  std::map<int, std::vector<int>> sel;
  for (int d : total_.space().degrees()) {
    sel[d] = level(i, d);
    for (int p : sel[d]) comps[d].push_back(total_.space().labels(d)[p]);
  }
  std::map<int, SparseMatrix> diff;
  for (const auto& [d, m] : total_.blocks()) {
    auto rows = sel.count(d + 1) ? sel[d + 1] : std::vector<int>{};
    auto cols = sel.count(d) ? sel[d] : std::vector<int>{};
    diff[d] = m.select_rows(rows).select_cols(cols);
  }
  return CochainComplex(GradedSpace(comps), diff);
}

bool FilteredComplex::operator==(const FilteredComplex& o) const {
  return total_ == o.total_ && weights_ == o.weights_ && floor_ == o.floor_;
}

FilteredComplex tensor_filtered(const FilteredComplex& x, const FilteredComplex& y) {
  CochainComplex t = tensor(x.total(), y.total());
  // Same basis order as tensor(): per total degree, by (degree of x-factor, x position, y position).
  std::map<int, std::vector<int>> w;
  for (const auto& [dx, lx] : x.total().space().components())
    for (const auto& [dy, ly] : y.total().space().components())
      for (std::size_t i = 0; i < lx.size(); ++i)
        for (std::size_t j = 0; j < ly.size(); ++j)
          w[dx + dy].push_back(x.weight(dx, static_cast<int>(i)) + y.weight(dy, static_cast<int>(j)));
  return FilteredComplex(std::move(t), std::move(w), x.floor() + y.floor());
}

CochainComplex GradedRModule::component(int w) const {
  if (components.empty() || w < floor) return CochainComplex();
  return components[std::min(w, ceiling()) - floor];
}

SparseMatrix GradedRModule::t_map(int w, int degree) const {
  if (w < floor - 1 || components.empty()) return SparseMatrix(0, 0);
  if (w == floor - 1) return SparseMatrix(dim(floor, degree), 0);
  if (w >= ceiling()) return SparseMatrix::identity(dim(w, degree));
  auto it = t[w - floor].find(degree);
  if (it != t[w - floor].end()) return it->second;
  return SparseMatrix(dim(w + 1, degree), dim(w, degree));
}

bool GradedRModule::torsion_free() const {
  for (int w = floor; w < ceiling(); ++w)
    for (int d : component(w).space().degrees()) {
      auto m = t_map(w, d);
      if (rank(m) != m.cols()) return false;
    }
  return true;
}

GradedRModule rees(const FilteredComplex& v) {
  GradedRModule m;
  m.floor = v.floor();
  for (int w = v.floor(); w <= v.ceiling(); ++w) m.components.push_back(v.level_complex(w));
  for (int w = v.floor(); w < v.ceiling(); ++w) {
    std::map<int, SparseMatrix> tw;
    for (int d : v.total().space().degrees()) {
      auto lo = v.level(w, d), hi = v.level(w + 1, d);
      SparseMatrix inc(static_cast<int>(hi.size()), static_cast<int>(lo.size()));
      for (std::size_t j = 0; j < lo.size(); ++j)
        inc.set(static_cast<int>(std::find(hi.begin(), hi.end(), lo[j]) - hi.begin()), static_cast<int>(j), 1);
      tw[d] = inc;
    }
    m.t.push_back(tw);
  }
  m.flat = m.torsion_free();
  return m;
}

FilteredComplex phi(const GradedRModule& m) {
  if (m.components.empty()) return FilteredComplex();
  int top = m.ceiling();
  const CochainComplex& colim = m.components.back();
  std::map<int, std::vector<std::string>> comps;
  std::map<int, std::vector<int>> weights;
  std::map<int, SparseMatrix> basis_change;  // columns: adapted basis in colimit coordinates
  for (int d : colim.space().degrees()) {
    std::vector<Vec> chosen;
    std::vector<int> ws;
    for (int w = m.floor; w <= top; ++w) {
      // Image of M_w in the colimit.
      SparseMatrix img = SparseMatrix::identity(m.dim(w, d));
      for (int u = w; u < top; ++u) img = m.t_map(u, d) * img;
      std::vector<Vec> cand;
      for (int c = 0; c < img.cols(); ++c) cand.push_back(img.column(c));
      for (auto& v : extend_basis(chosen, cand)) {
        chosen.push_back(std::move(v));
        ws.push_back(w);
      }
    }
    bool units = std::all_of(chosen.begin(), chosen.end(), [](const Vec& v) { return unit_index(v) >= 0; });
    std::vector<int> order(chosen.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    if (units)
      std::sort(order.begin(), order.end(), [&](int a, int b) { return unit_index(chosen[a]) < unit_index(chosen[b]); });
    const auto& labels = colim.space().labels(d);
    std::vector<Vec> cols;
    for (int i : order) {
      cols.push_back(chosen[i]);
      weights[d].push_back(ws[i]);
      int u = unit_index(chosen[i]);
      comps[d].push_back(u >= 0 ? labels[u] : combination_label(chosen[i], labels));
    }
    basis_change[d] = SparseMatrix::from_columns(colim.dim(d), cols);
  }
  std::map<int, SparseMatrix> diff;
  for (const auto& [d, blk] : colim.blocks()) {
    auto inv = inverse(basis_change.at(d + 1));
    diff[d] = *inv * blk * basis_change.at(d);
  }
  return FilteredComplex(CochainComplex(GradedSpace(comps), diff), weights, m.floor);
}

std::map<std::pair<int, int>, int> tensor_over_r_dims(const GradedRModule& m, const GradedRModule& n, int max_weight) {
  std::map<std::pair<int, int>, int> out;
  if (m.components.empty() || n.components.empty()) return out;
  std::set<int> mdeg, ndeg;
  for (const auto& c : m.components)
    for (int d : c.space().degrees()) mdeg.insert(d);
  for (const auto& c : n.components)
    for (int d : c.space().degrees()) ndeg.insert(d);
  int lo = m.floor + n.floor;
  for (int wt = lo; wt <= max_weight; ++wt) {
    std::set<int> tdeg;
    for (int a : mdeg)
      for (int b : ndeg) tdeg.insert(a + b);
    for (int deg : tdeg) {
      // Generator blocks (p, a) at weight wt and relation blocks (p, a) at weight wt-1.
      auto blocks = [&](int weight) {
        std::vector<std::pair<int, int>> bl;
        for (int p = m.floor; p + n.floor <= weight; ++p)
          for (int a : mdeg)
            if (ndeg.count(deg - a)) bl.emplace_back(p, a);
        return bl;
      };
      auto gens = blocks(wt), rels = blocks(wt - 1);
      std::map<std::pair<int, int>, int> goff;
      int rows = 0;
      for (auto [p, a] : gens) {
        goff[{p, a}] = rows;
        rows += m.dim(p, a) * n.dim(wt - p, deg - a);
      }
      int cols = 0;
      for (auto [p, a] : rels) cols += m.dim(p, a) * n.dim(wt - 1 - p, deg - a);
      SparseMatrix rel(rows, cols);
      int c0 = 0;
      for (auto [p, a] : rels) {
        int q = wt - 1 - p, b = deg - a;
        int w = m.dim(p, a) * n.dim(q, b);
        // t⊗1 lands in block (p+1, a); 1⊗t in block (p, a) with q+1.
        SparseMatrix left = kron(m.t_map(p, a), SparseMatrix::identity(n.dim(q, b)));
        SparseMatrix right = kron(SparseMatrix::identity(m.dim(p, a)), n.t_map(q, b));
        auto place = [&](const SparseMatrix& blk, std::pair<int, int> key, const Rational& s) {
          auto it = goff.find(key);
          if (it == goff.end()) return;
          for (int i = 0; i < blk.rows(); ++i)
            for (const auto& [j, v] : blk.row(i)) rel.add_to(it->second + i, c0 + j, s * v);
        };
        place(left, {p + 1, a}, 1);
        place(right, {p, a}, -1);
        c0 += w;
      }
      int dim = rows - rank(rel);
      if (dim != 0) out[{wt, deg}] = dim;
    }
  }
  return out;
}

std::map<int, CochainComplex> associated_graded(const FilteredComplex& v) {
  std::map<int, CochainComplex> out;
  const auto& total = v.total();
  for (int n = v.floor(); n <= v.ceiling(); ++n) {
    std::map<int, std::vector<std::string>> comps;
    std::map<int, std::vector<int>> sel;
    for (int d : total.space().degrees())
      for (int p = 0; p < total.dim(d); ++p)
        if (v.weight(d, p) == n) {
          sel[d].push_back(p);
          comps[d].push_back(total.space().labels(d)[p]);
        }
    std::map<int, SparseMatrix> diff;
    for (const auto& [d, m] : total.blocks())
      diff[d] = m.select_rows(sel[d + 1]).select_cols(sel[d]);
    out.emplace(n, CochainComplex(GradedSpace(comps), diff));
  }
  return out;
}

Admissibility is_admissible_coalgebra(const FilteredComplex& x, const std::string& unit_label) {
  for (int d : x.total().space().degrees())
    if (x.level_dim(-1, d) != 0) return {false, "X_{-1} != 0 in degree " + std::to_string(d)};
  auto unit = x.total().space().find(unit_label);
  if (!unit) return {false, "no unit '" + unit_label + "'"};
  for (int d : x.total().space().degrees()) {
    auto lv = x.level(0, d);
    bool ok = d == unit->first ? (lv.size() == 1 && lv[0] == unit->second) : lv.empty();
    if (!ok) return {false, "X_0 != k.1 in degree " + std::to_string(d)};
  }
  return {};
}

Admissibility is_admissible_lie(const FilteredComplex& g) {
  for (int d : g.total().space().degrees())
    if (g.level_dim(0, d) != 0) return {false, "g_0 != 0 (degree " + std::to_string(d) + ")"};
  return {};
}

bool is_quasi_isomorphism(const ChainMap& f, int lo, int hi) {
  for (int d = lo; d <= hi; ++d) {
    auto hs = cohomology_at(f.source, d);
    auto bt = column_space_basis(f.target.diff(d - 1));
    int ht = cohomology_at(f.target, d).dim;
    if (hs.dim != ht) return false;
    SparseMatrix b = f.block(d);
    std::vector<Vec> images = bt;
    for (const auto& r : hs.representatives) images.push_back(b.apply(r));
    if (span_rank(images, f.target.dim(d)) != static_cast<int>(bt.size()) + hs.dim) return false;
  }
  return true;
}

bool filtered_qis_check(const FilteredChainMap& f, int lo, int hi) {
  const auto& s = f.source;
  const auto& t = f.target;
  for (const auto& [d, m] : f.blocks)
    for (int r = 0; r < m.rows(); ++r)
      for (const auto& [c, v] : m.row(r))
        if (t.weight(d, r) > s.weight(d, c))
          throw ValidationError("map does not preserve levels at " + s.total().space().labels(d)[c]);
  ChainMap whole{s.total(), t.total(), f.blocks};
  if (!whole.commutes()) throw ValidationError("map does not commute with differentials");
  int top = std::max(s.ceiling(), t.ceiling());
  for (int i = std::min(s.floor(), t.floor()); i <= top; ++i) {
    ChainMap li{s.level_complex(i), t.level_complex(i), {}};
    for (const auto& [d, m] : f.blocks) li.blocks[d] = m.select_rows(t.level(i, d)).select_cols(s.level(i, d));
    if (!is_quasi_isomorphism(li, lo, hi)) return false;
  }
  return true;
}

}  // namespace dgl
