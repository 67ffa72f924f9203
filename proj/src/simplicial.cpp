#include "dgl/simplicial.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace dgl {

int TruncatedSimplicialSet::find(int n, const std::string& label) const {
  auto it = std::find(labels[n].begin(), labels[n].end(), label);
  return it == labels[n].end() ? -1 : static_cast<int>(it - labels[n].begin());
}

namespace {

// Allocates face/degeneracy tables for the given level sizes.
void shape(TruncatedSimplicialSet& s) {
  const int L = s.levels();
  s.face.assign(L + 1, {});
  s.degeneracy.assign(L + 1, {});
  for (int n = 0; n <= L; ++n) {
    if (n >= 1) s.face[n].assign(n + 1, std::vector<int>(s.size(n), -1));
    if (n < L) s.degeneracy[n].assign(n + 1, std::vector<int>(s.size(n), -1));
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string where(int n, int x, const TruncatedSimplicialSet& s) {
  return "level " + std::to_string(n) + " simplex " + s.labels[n][x];
}

}  // namespace

std::optional<std::string> simplicial_identity_violation(const TruncatedSimplicialSet& s) {
  const int L = s.levels();
  for (int n = 0; n <= L; ++n)
    for (int x = 0; x < s.size(n); ++x) {
      for (int j = 0; j <= n && n >= 2; ++j)
        for (int i = 0; i < j; ++i)
          if (s.d(i, n - 1, s.d(j, n, x)) != s.d(j - 1, n - 1, s.d(i, n, x)))
            return "d" + std::to_string(i) + "d" + std::to_string(j) + " at " + where(n, x, s);
      if (n + 1 <= L)
        for (int j = 0; j <= n; ++j) {
          int y = s.s(j, n, x);
          for (int i = 0; i <= n + 1; ++i) {
            int lhs = s.d(i, n + 1, y);
            int rhs;
            if (i == j || i == j + 1)
              rhs = x;
            else if (i < j)
              rhs = s.s(j - 1, n - 1, s.d(i, n, x));
            else
              rhs = s.s(j, n - 1, s.d(i - 1, n, x));
            if (lhs != rhs) return "d" + std::to_string(i) + "s" + std::to_string(j) + " at " + where(n, x, s);
          }
        }
      if (n + 2 <= L)
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= j; ++i)
            if (s.s(i, n + 1, s.s(j, n, x)) != s.s(j + 1, n + 1, s.s(i, n, x)))
              return "s" + std::to_string(i) + "s" + std::to_string(j) + " at " + where(n, x, s);
    }
  return std::nullopt;
}

TruncatedSimplicialSet constant_simplicial_set(const std::vector<std::string>& points, int levels) {
  TruncatedSimplicialSet s;
  s.labels.assign(levels + 1, points);
  shape(s);
  std::vector<int> id(points.size());
  std::iota(id.begin(), id.end(), 0);
  for (auto& level : s.face)
    for (auto& f : level) f = id;
  for (auto& level : s.degeneracy)
    for (auto& f : level) f = id;
  return s;
}

TruncatedSimplicialSet codiscrete_simplicial_set(const std::vector<std::string>& points, int levels) {
  TruncatedSimplicialSet s;
  const int p = static_cast<int>(points.size());
  // tuple (a_0..a_n) has index Σ a_k p^k
  auto decode = [&](int n, int x) {
    std::vector<int> a(n + 1);
    for (int k = 0; k <= n; ++k) a[k] = x % p, x /= p;
    return a;
  };
  auto encode = [&](const std::vector<int>& a) {
    int x = 0;
    for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) x = x * p + a[k];
    return x;
  };
  s.labels.resize(levels + 1);
  for (int n = 0, count = p; n <= levels; ++n, count *= p) {
    if (p == 0) count = 0;
    for (int x = 0; x < count; ++x) {
      std::vector<std::string> parts;
      for (int a : decode(n, x)) parts.push_back(points[a]);
      s.labels[n].push_back("(" + join(parts, ",") + ")");
    }
  }
  shape(s);
  for (int n = 0; n <= levels; ++n)
    for (int x = 0; x < s.size(n); ++x) {
      auto a = decode(n, x);
      for (int i = 0; i <= n; ++i) {
        if (n >= 1) {
          auto b = a;
          b.erase(b.begin() + i);
          s.face[n][i][x] = encode(b);
        }
        if (n < levels) {
          auto b = a;
          b.insert(b.begin() + i, a[i]);
          s.degeneracy[n][i][x] = encode(b);
        }
      }
    }
  return s;
}

TruncatedSimplicialSet disjoint_union(const TruncatedSimplicialSet& a, const TruncatedSimplicialSet& b) {
  if (a.levels() != b.levels()) throw ValidationError("disjoint_union: level mismatch");
  TruncatedSimplicialSet s;
  const int L = a.levels();
  s.labels.resize(L + 1);
  for (int n = 0; n <= L; ++n) {
    for (const auto& l : a.labels[n]) s.labels[n].push_back("0:" + l);
    for (const auto& l : b.labels[n]) s.labels[n].push_back("1:" + l);
  }
  shape(s);
  for (int n = 0; n <= L; ++n)
    for (int i = 0; i <= n; ++i) {
      if (n >= 1)
        for (int x = 0; x < s.size(n); ++x)
          s.face[n][i][x] = x < a.size(n) ? a.d(i, n, x) : a.size(n - 1) + b.d(i, n, x - a.size(n));
      if (n < L)
        for (int x = 0; x < s.size(n); ++x)
          s.degeneracy[n][i][x] = x < a.size(n) ? a.s(i, n, x) : a.size(n + 1) + b.s(i, n, x - a.size(n));
    }
  return s;
}

std::optional<std::string> simplicial_map_violation(const TruncatedSimplicialSet& src, const TruncatedSimplicialSet& tgt,
                                                    const SimplicialMap& f) {
  const int L = std::min(src.levels(), tgt.levels());
  for (int n = 0; n <= L; ++n)
    for (int x = 0; x < src.size(n); ++x) {
      for (int i = 0; i <= n; ++i) {
        if (n >= 1 && f.map[n - 1][src.d(i, n, x)] != tgt.d(i, n, f.map[n][x]))
          return "d" + std::to_string(i) + " at " + where(n, x, src);
        if (n < L && f.map[n + 1][src.s(i, n, x)] != tgt.s(i, n, f.map[n][x]))
          return "s" + std::to_string(i) + " at " + where(n, x, src);
      }
    }
  return std::nullopt;
}

SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f) {
  SimplicialMap h;
  for (std::size_t n = 0; n < f.map.size() && n < g.map.size(); ++n) {
    h.map.emplace_back();
    for (int y : f.map[n]) h.map[n].push_back(g.map[n][y]);
  }
  return h;
}

bool is_identity(const SimplicialMap& f) {
  for (const auto& level : f.map)
    for (std::size_t x = 0; x < level.size(); ++x)
      if (level[x] != static_cast<int>(x)) return false;
  return true;
}

// ---- simplicial categories ----

int SimplicialCategory::levels() const {
  int L = static_cast<int>(identity.size()) - 1;
  for (const auto& [k, h] : hom) L = std::min(L, h.levels());
  return L;
}

std::optional<std::string> simplicial_category_violation(const SimplicialCategory& c) {
  const int m = static_cast<int>(c.objects.size());
  const int L = c.levels();
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (auto v = simplicial_identity_violation(c.arrows(x, y))) return "hom(" + c.objects[x] + "," + c.objects[y] + "): " + *v;
  for (int n = 0; n <= L; ++n) {
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        const auto& h = c.arrows(x, y);
        for (int f = 0; f < h.size(n); ++f) {
          if (c.comp(n, x, y, y, c.identity[n][y], f) != f || c.comp(n, x, x, y, f, c.identity[n][x]) != f)
            return "unit law fails at level " + std::to_string(n) + " on " + h.labels[n][f];
        }
      }
    for (int x = 0; x < m; ++x) {
      for (int i = 0; i <= n; ++i) {
        if (n >= 1 && c.arrows(x, x).d(i, n, c.identity[n][x]) != c.identity[n - 1][x]) return "face of identity";
        if (n < L && c.arrows(x, x).s(i, n, c.identity[n][x]) != c.identity[n + 1][x]) return "degeneracy of identity";
      }
    }
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        for (int z = 0; z < m; ++z) {
          const auto &fxy = c.arrows(x, y), &gyz = c.arrows(y, z), &hxz = c.arrows(x, z);
          for (int f = 0; f < fxy.size(n); ++f)
            for (int g = 0; g < gyz.size(n); ++g) {
              int gf = c.comp(n, x, y, z, g, f);
              for (int i = 0; i <= n; ++i) {
                if (n >= 1 && hxz.d(i, n, gf) != c.comp(n - 1, x, y, z, gyz.d(i, n, g), fxy.d(i, n, f)))
                  return "composition does not commute with d" + std::to_string(i) + " at level " + std::to_string(n);
                if (n < L && hxz.s(i, n, gf) != c.comp(n + 1, x, y, z, gyz.s(i, n, g), fxy.s(i, n, f)))
                  return "composition does not commute with s" + std::to_string(i) + " at level " + std::to_string(n);
              }
              for (int w = 0; w < m; ++w) {
                const auto& kzw = c.arrows(z, w);
                for (int k = 0; k < kzw.size(n); ++k)
                  if (c.comp(n, x, z, w, k, gf) != c.comp(n, x, y, w, c.comp(n, y, z, w, k, g), f))
                    return "associativity fails at level " + std::to_string(n);
              }
            }
        }
  }
  return std::nullopt;
}

FiniteCategory group_category(const std::vector<std::string>& names, const std::vector<std::vector<int>>& mult) {
  return chaotic_groupoid(1, names, mult);
}

FiniteCategory chaotic_groupoid(int objects, const std::vector<std::string>& names, const std::vector<std::vector<int>>& mult) {
  FiniteCategory c;
  int e = -1;
  for (int a = 0; a < static_cast<int>(names.size()) && e < 0; ++a) {
    bool unit = true;
    for (int b = 0; b < static_cast<int>(names.size()); ++b) unit = unit && mult[a][b] == b && mult[b][a] == b;
    if (unit) e = a;
  }
  if (e < 0) throw ValidationError("group table has no identity");
  for (int x = 0; x < objects; ++x) c.objects.push_back(objects == 1 ? "*" : "o" + std::to_string(x));
  for (int x = 0; x < objects; ++x) {
    c.identity.push_back(e);
    for (int y = 0; y < objects; ++y) {
      c.arrows[{x, y}] = names;
      for (int z = 0; z < objects; ++z) c.compose[{x, y, z}] = mult;
    }
  }
  return c;
}

namespace {

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

FiniteCategory symmetric_group_category(int n) {
  auto perms = permutations(n);
  std::map<std::vector<int>, int> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    index[perms[i]] = static_cast<int>(i);
    std::string s;
    for (int v : perms[i]) s += std::to_string(v + 1);
    names.push_back(s);
  }
  std::vector<std::vector<int>> mult(perms.size(), std::vector<int>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> ab(n);
      for (int k = 0; k < n; ++k) ab[k] = perms[a][perms[b][k]];  // a∘b
      mult[a][b] = index[ab];
    }
  return group_category(names, mult);
}

FiniteCategory cyclic_group_category(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) mult[a][b] = (a + b) % n;
  }
  return group_category(names, mult);
}

FiniteCategory trivial_category() { return cyclic_group_category(1); }

FiniteCategory idempotent_monoid_category() {
  FiniteCategory c;
  c.objects = {"*"};
  c.arrows[{0, 0}] = {"1", "e"};
  c.compose[{0, 0, 0}] = {{0, 1}, {1, 1}};
  c.identity = {0};
  return c;
}

namespace {

SimplicialCategory levelwise(const FiniteCategory& c, int levels,
                             const std::function<TruncatedSimplicialSet(const std::vector<std::string>&)>& hom_of,
                             const std::function<int(int, int)>& tuple_len) {
  SimplicialCategory s;
  s.objects = c.objects;
  const int m = static_cast<int>(c.objects.size());
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      auto it = c.arrows.find({x, y});
      s.hom[{x, y}] = hom_of(it == c.arrows.end() ? std::vector<std::string>{} : it->second);
    }
  s.compose.resize(levels + 1);
  s.identity.assign(levels + 1, std::vector<int>(m));
  for (int n = 0; n <= levels; ++n) {
    const int len = tuple_len(n, 0);
    // arrow tuples as base-|hom| digits, componentwise operations
    auto digits = [&](int x, int size) {
      std::vector<int> a(len);
      for (int k = 0; k < len; ++k) a[k] = x % size, x /= size;
      return a;
    };
    for (int x = 0; x < m; ++x) {
      int e = c.identity[x], size = static_cast<int>(c.arrows.at({x, x}).size()), id = 0;
      for (int k = 0; k < len; ++k) id = id * size + e;
      s.identity[n][x] = id;
    }
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        for (int z = 0; z < m; ++z) {
          const int nf = s.arrows(x, y).size(n), ng = s.arrows(y, z).size(n);
          std::vector<std::vector<int>> table(ng, std::vector<int>(nf));
          if (nf > 0 && ng > 0) {
            const int sf = static_cast<int>(c.arrows.at({x, y}).size()), sg = static_cast<int>(c.arrows.at({y, z}).size());
            const int sh = static_cast<int>(c.arrows.at({x, z}).size());
            const auto& mult = c.compose.at({x, y, z});
            for (int g = 0; g < ng; ++g)
              for (int f = 0; f < nf; ++f) {
                auto a = digits(f, sf), b = digits(g, sg);
                int h = 0;
                for (int k = len - 1; k >= 0; --k) h = h * sh + mult[b[k]][a[k]];
                table[g][f] = h;
              }
          }
          s.compose[n][{x, y, z}] = std::move(table);
        }
  }
  return s;
}

}  // namespace

SimplicialCategory constant_simplicial_category(const FiniteCategory& c, int levels) {
  return levelwise(
      c, levels, [&](const std::vector<std::string>& a) { return constant_simplicial_set(a, levels); },
      [](int, int) { return 1; });
}

SimplicialCategory codiscrete_simplicial_category(const FiniteCategory& c, int levels) {
  return levelwise(
      c, levels, [&](const std::vector<std::string>& a) { return codiscrete_simplicial_set(a, levels); },
      [](int n, int) { return n + 1; });
}

GaugeSimplicialGroupoid gauge_simplicial_groupoid(const DgLieAlgebra& h, const std::vector<Vec>& objects, int levels,
                                                  int depth) {
  require_nilpotent(h);
  for (int d : h.space().degrees())
    if (d < 0 && h.space().dim(d) > 0) throw ValidationError("gauge groupoid: negative degrees make transports non-constant");
  for (const auto& x : objects)
    if (!mc_check(h, x).ok) throw ValidationError("gauge groupoid: object is not Maurer-Cartan");
  GaugeSimplicialGroupoid out;
  FiniteCategory c;
  const int m = static_cast<int>(objects.size());
  for (int x = 0; x < m; ++x) c.objects.push_back("x" + std::to_string(x));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      auto dec = gauge_equiv_decide(h, objects[x], objects[y], depth);
      if (dec.kind == GaugeDecision::Kind::Unknown) throw ValidationError("gauge groupoid: undecided pair " + c.objects[x] + ", " + c.objects[y]);
      if (dec.kind == GaugeDecision::Kind::Obstruction) {
        c.arrows[{x, y}] = {};
        continue;
      }
      if (!dec.family || !dec.family->kernel.empty())
        throw ValidationError("gauge groupoid: stabilizer of " + c.objects[x] + " is not trivial, hom sets are infinite");
      c.arrows[{x, y}] = {"g" + std::to_string(x) + std::to_string(y)};
      out.transport[{x, y}] = dec.witness.log;
    }
  for (int x = 0; x < m; ++x) {
    if (!is_zero(out.transport.at({x, x}))) throw ValidationError("gauge groupoid: nonzero self transport");
    c.identity.push_back(0);
  }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        const bool f = !c.arrows[{x, y}].empty(), g = !c.arrows[{y, z}].empty();
        if (f && g) {
          // the composite transports x to z, so by uniqueness it is the stored arrow
          auto comp = gauge_compose(h, GaugeElement{out.transport.at({y, z})}, GaugeElement{out.transport.at({x, y})});
          if (comp.log != out.transport.at({x, z})) throw ValidationError("gauge groupoid: composite is not the unique transport");
          c.compose[{x, y, z}] = {{0}};
        } else {
          c.compose[{x, y, z}] = std::vector<std::vector<int>>(g ? 1 : 0, std::vector<int>(f ? 1 : 0, 0));
        }
      }
  out.category = constant_simplicial_category(c, levels);
  return out;
}

// ---- nerves ----

namespace {

// A string of composable arrows: vertices v_0..v_n and arrow indices (level per position).
struct Chain {
  std::vector<int> v;
  std::vector<int> f;
  auto operator<=>(const Chain&) const = default;
};

struct NerveBuilder {
  const SimplicialCategory& c;
  int levels;
  std::function<int(int, int)> level_of;  // (n, position 1..n) -> hom level
  std::vector<std::vector<Chain>> chains;
  std::vector<std::map<Chain, int>> index;

  void enumerate() {
    const int m = static_cast<int>(c.objects.size());
    chains.assign(levels + 1, {});
    index.assign(levels + 1, {});
    for (int n = 0; n <= levels; ++n) {
      Chain ch;
      std::function<void()> rec = [&]() {
        int pos = static_cast<int>(ch.f.size());
        if (pos == n) {
          index[n][ch] = static_cast<int>(chains[n].size());
          chains[n].push_back(ch);
          return;
        }
        for (int y = 0; y < m; ++y) {
          const auto& h = c.arrows(ch.v.back(), y);
          const int lvl = level_of(n, pos + 1);
          for (int a = 0; a < h.size(lvl); ++a) {
            ch.v.push_back(y);
            ch.f.push_back(a);
            rec();
            ch.v.pop_back();
            ch.f.pop_back();
          }
        }
      };
      for (int x = 0; x < m; ++x) {
        ch.v = {x};
        rec();
      }
    }
  }

  std::string label(int n, const Chain& ch) const {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < ch.f.size(); ++i)
      parts.push_back(c.arrows(ch.v[i], ch.v[i + 1]).labels[level_of(n, static_cast<int>(i) + 1)][ch.f[i]]);
    std::string verts;
    if (c.objects.size() > 1 || n == 0) {
      std::vector<std::string> vs;
      for (int v : ch.v) vs.push_back(c.objects[v]);
      verts = join(vs, ",");
    }
    return n == 0 ? verts : verts + (verts.empty() ? "" : ":") + "[" + join(parts, "|") + "]";
  }

  TruncatedSimplicialSet build(const std::function<Chain(int, int, const Chain&)>& face,
                               const std::function<Chain(int, int, const Chain&)>& degen) {
    enumerate();
    TruncatedSimplicialSet s;
    s.labels.resize(levels + 1);
    for (int n = 0; n <= levels; ++n)
      for (const auto& ch : chains[n]) s.labels[n].push_back(label(n, ch));
    shape(s);
    for (int n = 0; n <= levels; ++n)
      for (int x = 0; x < s.size(n); ++x)
        for (int i = 0; i <= n; ++i) {
          if (n >= 1) s.face[n][i][x] = index[n - 1].at(face(n, i, chains[n][x]));
          if (n < levels) s.degeneracy[n][i][x] = index[n + 1].at(degen(n, i, chains[n][x]));
        }
    return s;
  }
};

}  // namespace

TruncatedSimplicialSet tn_nerve(const SimplicialCategory& c, int levels) {
  if (c.levels() < levels) throw ValidationError("tn_nerve: category has too few levels");
  NerveBuilder b{c, levels, [](int n, int) { return n; }, {}, {}};
  auto face = [&](int n, int i, const Chain& ch) {
    Chain out;
    std::vector<int> g(n);
    for (int j = 0; j < n; ++j) g[j] = c.arrows(ch.v[j], ch.v[j + 1]).d(i, n, ch.f[j]);
    out.v = ch.v;
    out.v.erase(out.v.begin() + i);
    if (i == 0) {
      out.f.assign(g.begin() + 1, g.end());
    } else if (i == n) {
      out.f.assign(g.begin(), g.end() - 1);
    } else {
      out.f.assign(g.begin(), g.begin() + i - 1);
      out.f.push_back(c.comp(n - 1, ch.v[i - 1], ch.v[i], ch.v[i + 1], g[i], g[i - 1]));
      out.f.insert(out.f.end(), g.begin() + i + 1, g.end());
    }
    return out;
  };
  auto degen = [&](int n, int i, const Chain& ch) {
    Chain out;
    out.v = ch.v;
    out.v.insert(out.v.begin() + i, ch.v[i]);
    for (int j = 0; j < n; ++j) out.f.push_back(c.arrows(ch.v[j], ch.v[j + 1]).s(i, n, ch.f[j]));
    out.f.insert(out.f.begin() + i, c.identity[n + 1][ch.v[i]]);
    return out;
  };
  return b.build(face, degen);
}

TruncatedSimplicialSet wbar_nerve(const SimplicialCategory& c, int levels) {
  if (c.levels() < levels - 1) throw ValidationError("wbar_nerve: category has too few levels");
  NerveBuilder b{c, levels, [](int n, int i) { return n - i; }, {}, {}};
  // positions are 1-based in the formulas; g_j sits at level n - j
  auto face = [&](int n, int i, const Chain& ch) {
    Chain out;
    out.v = ch.v;
    out.v.erase(out.v.begin() + i);
    auto hom = [&](int j) -> const TruncatedSimplicialSet& { return c.arrows(ch.v[j - 1], ch.v[j]); };
    for (int j = 1; j < i; ++j) out.f.push_back(hom(j).d(i - j, n - j, ch.f[j - 1]));
    if (i > 0 && i < n) {
      int d0 = hom(i).d(0, n - i, ch.f[i - 1]);
      out.f.push_back(c.comp(n - i - 1, ch.v[i - 1], ch.v[i], ch.v[i + 1], ch.f[i], d0));
    }
    for (int j = std::max(i + 2, 2); j <= n && i < n; ++j) out.f.push_back(ch.f[j - 1]);
    return out;
  };
  auto degen = [&](int n, int i, const Chain& ch) {
    Chain out;
    out.v = ch.v;
    out.v.insert(out.v.begin() + i, ch.v[i]);
    for (int j = 1; j <= i; ++j) out.f.push_back(c.arrows(ch.v[j - 1], ch.v[j]).s(i - j, n - j, ch.f[j - 1]));
    out.f.push_back(c.identity[n - i][ch.v[i]]);
    for (int j = i + 1; j <= n; ++j) out.f.push_back(ch.f[j - 1]);
    return out;
  };
  return b.build(face, degen);
}

TruncatedSimplicialSet category_nerve(const FiniteCategory& c, int levels) {
  return tn_nerve(constant_simplicial_category(c, levels), levels);
}

namespace {

std::vector<std::vector<Chain>> chains_of(const SimplicialCategory& c, int levels, bool tn) {
  NerveBuilder b{c, levels, tn ? std::function<int(int, int)>([](int n, int) { return n; })
                               : std::function<int(int, int)>([](int n, int i) { return n - i; }),
                 {}, {}};
  b.enumerate();
  return b.chains;
}

}  // namespace

SimplicialMap pi_map(const SimplicialCategory& c, const TruncatedSimplicialSet& tn, const TruncatedSimplicialSet& wbar) {
  const int L = std::min(tn.levels(), wbar.levels());
  auto src = chains_of(c, L, true), tgt = chains_of(c, L, false);
  std::vector<std::map<Chain, int>> tindex(L + 1);
  for (int n = 0; n <= L; ++n)
    for (std::size_t x = 0; x < tgt[n].size(); ++x) tindex[n][tgt[n][x]] = static_cast<int>(x);
  SimplicialMap f;
  f.map.resize(L + 1);
  for (int n = 0; n <= L; ++n)
    for (const auto& ch : src[n]) {
      Chain out{ch.v, {}};
      for (int i = 1; i <= n; ++i) {
        const auto& h = c.arrows(ch.v[i - 1], ch.v[i]);
        int a = ch.f[i - 1];
        for (int k = 0; k < i; ++k) a = h.d(0, n - k, a);  // d_0^i
        out.f.push_back(a);
      }
      f.map[n].push_back(tindex[n].at(out));
    }
  return f;
}

SimplicialMap rho_map(const SimplicialCategory& c, const TruncatedSimplicialSet& tn, const TruncatedSimplicialSet& wbar) {
  const int L = std::min(tn.levels(), wbar.levels());
  auto src = chains_of(c, L, false), tgt = chains_of(c, L, true);
  std::vector<std::map<Chain, int>> tindex(L + 1);
  for (int n = 0; n <= L; ++n)
    for (std::size_t x = 0; x < tgt[n].size(); ++x) tindex[n][tgt[n][x]] = static_cast<int>(x);
  SimplicialMap f;
  f.map.resize(L + 1);
  for (int n = 0; n <= L; ++n)
    for (const auto& ch : src[n]) {
      Chain out{ch.v, {}};
      for (int i = 1; i <= n; ++i) {
        const auto& h = c.arrows(ch.v[i - 1], ch.v[i]);
        int a = ch.f[i - 1];
        for (int k = 0; k < i; ++k) a = h.s(0, n - i + k, a);  // s_0^i
        out.f.push_back(a);
      }
      f.map[n].push_back(tindex[n].at(out));
    }
  return f;
}

// ---- Kan and groupoid conditions ----

KanSearch horn_search(const TruncatedSimplicialSet& s, int max_level) {
  KanSearch r;
  const int top = std::min(max_level, s.levels());
  for (int n = 1; n <= top; ++n)
    for (int k = 0; k <= n; ++k) {
      std::set<std::vector<int>> filled;
      for (int x = 0; x < s.size(n); ++x) {
        std::vector<int> faces;
        for (int i = 0; i <= n; ++i)
          if (i != k) faces.push_back(s.d(i, n, x));
        filled.insert(faces);
      }
      // enumerate compatible horns: y_i for i ≠ k with d_i y_j = d_{j-1} y_i for i < j
      std::vector<int> idx;
      for (int i = 0; i <= n; ++i)
        if (i != k) idx.push_back(i);
      std::vector<int> y(n + 1, -1);
      std::function<bool(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == idx.size()) {
          ++r.horns;
          std::vector<int> faces;
          for (int i : idx) faces.push_back(y[i]);
          if (!filled.count(faces)) {
            std::vector<std::string> ls;
            for (int i : idx) ls.push_back(s.labels[n - 1][y[i]]);
            r.kan = false;
            r.failure = "horn L" + std::to_string(n) + "," + std::to_string(k) + " (" + join(ls, ", ") + ") has no filler";
            return false;
          }
          return true;
        }
        const int j = idx[pos];
        for (int c = 0; c < s.size(n - 1); ++c) {
          bool ok = true;
          for (std::size_t q = 0; q < pos && ok; ++q) {
            const int i = idx[q];  // i < j
            if (n >= 2) ok = s.d(i, n - 1, c) == s.d(j - 1, n - 1, y[i]);
          }
          if (!ok) continue;
          y[j] = c;
          if (!rec(pos + 1)) return false;
        }
        return true;
      };
      if (!rec(0)) return r;
    }
  return r;
}

WnConditions check_wn_conditions(const SimplicialCategory& c) {
  WnConditions w;
  const int m = static_cast<int>(c.objects.size());
  const int L = c.levels();
  w.caveat = "Kan condition checked on horns of dimension <= " + std::to_string(std::min(2, L)) + " at stored levels";
  for (int x = 0; x < m && w.homs_kan; ++x)
    for (int y = 0; y < m && w.homs_kan; ++y) {
      auto k = horn_search(c.arrows(x, y), 2);
      if (!k.kan) {
        w.homs_kan = false;
        w.caveat += "; hom(" + c.objects[x] + "," + c.objects[y] + "): " + k.failure;
      }
    }
  for (int n = 0; n <= L && w.groupoid; ++n)
    for (int x = 0; x < m && w.groupoid; ++x)
      for (int y = 0; y < m && w.groupoid; ++y)
        for (int f = 0; f < c.arrows(x, y).size(n) && w.groupoid; ++f) {
          bool inverse = false;
          for (int g = 0; g < c.arrows(y, x).size(n) && !inverse; ++g)
            inverse = c.comp(n, x, y, x, g, f) == c.identity[n][x] && c.comp(n, y, x, y, f, g) == c.identity[n][y];
          w.groupoid = inverse;
        }
  return w;
}

// ---- fundamental groups ----

namespace {

class CosetEnumeration {
public:
  CosetEnumeration(int gens, int max_cosets) : cols_(2 * gens), max_(max_cosets) { add_row(); }

  // letter ±(g+1) -> column
  int col(int letter) const { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  int inv(int column) const { return column ^ 1; }

  bool run(const std::vector<std::vector<int>>& relators) {
    for (int a = 0; a < static_cast<int>(table_.size()); ++a) {
      if (rep(a) != a) continue;
      for (const auto& w : relators) {
        if (!scan_and_fill(a, w)) return false;
        if (rep(a) != a) break;
      }
      if (rep(a) != a) continue;
      for (int x = 0; x < cols_; ++x)
        if (table_[a][x] < 0 && !define(a, x)) return false;
    }
    return true;
  }

  // Live cosets renumbered; perm[g][c] = c·g.
  std::vector<std::vector<int>> representation() {
    std::vector<int> live, number(table_.size(), -1);
    for (int a = 0; a < static_cast<int>(table_.size()); ++a)
      if (rep(a) == a) number[a] = static_cast<int>(live.size()), live.push_back(a);
    std::vector<std::vector<int>> perms(cols_ / 2, std::vector<int>(live.size()));
    for (int g = 0; g < cols_ / 2; ++g)
      for (std::size_t c = 0; c < live.size(); ++c) perms[g][c] = number[rep(table_[live[c]][2 * g])];
    return perms;
  }

private:
  int cols_;
  int max_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;

  void add_row() {
    table_.emplace_back(cols_, -1);
    parent_.push_back(static_cast<int>(parent_.size()));
  }

  int rep(int a) {
    int r = a;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[a] != r) {
      int next = parent_[a];
      parent_[a] = r;
      a = next;
    }
    return r;
  }

  bool define(int a, int x) {
    if (static_cast<int>(table_.size()) >= max_) return false;
    int b = static_cast<int>(table_.size());
    add_row();
    table_[a][x] = b;
    table_[b][inv(x)] = a;
    return true;
  }

  void merge(int k, int l, std::deque<int>& q) {
    k = rep(k), l = rep(l);
    if (k == l) return;
    int lo = std::min(k, l), hi = std::max(k, l);
    parent_[hi] = lo;
    q.push_back(hi);
  }

  void coincidence(int a, int b) {
    std::deque<int> q;
    merge(a, b, q);
    while (!q.empty()) {
      int g = q.front();
      q.pop_front();
      for (int x = 0; x < cols_; ++x) {
        int d = table_[g][x];
        if (d < 0) continue;
        table_[d][inv(x)] = -1;
        int mu = rep(g), nu = rep(d);
        if (table_[mu][x] >= 0)
          merge(nu, table_[mu][x], q);
        else if (table_[nu][inv(x)] >= 0)
          merge(mu, table_[nu][inv(x)], q);
        else {
          table_[mu][x] = nu;
          table_[nu][inv(x)] = mu;
        }
      }
    }
  }

  bool scan_and_fill(int a, const std::vector<int>& w) {
    if (w.empty()) return true;
    const int r = static_cast<int>(w.size());
    int f = a, b = a, i = 0, j = r - 1;
    for (;;) {
      while (i <= j && table_[f][col(w[i])] >= 0) f = table_[f][col(w[i++])];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && table_[b][inv(col(w[j]))] >= 0) b = table_[b][inv(col(w[j--]))];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        table_[f][col(w[i])] = b;
        table_[b][inv(col(w[i]))] = f;
        return true;
      }
      if (!define(f, col(w[i]))) return false;
    }
  }
};

// Edge path from the basepoint: (edge, +1 if traversed d1 -> d0).
using EdgePath = std::vector<std::pair<int, int>>;

}  // namespace

std::optional<std::vector<std::vector<int>>> regular_representation(const GroupPresentation& p, int max_cosets) {
  CosetEnumeration e(p.generators, max_cosets);
  if (!e.run(p.relators)) return std::nullopt;
  return e.representation();
}

std::optional<int> group_order(const GroupPresentation& p, int max_cosets) {
  auto r = regular_representation(p, max_cosets);
  if (!r) return std::nullopt;
  if (p.generators == 0) return 1;
  return static_cast<int>(r->front().size());
}

namespace {

struct Tree {
  std::vector<int> component;
  int components = 0;
  std::vector<EdgePath> path;  // from the component root
  std::vector<bool> tree_edge;
};

Tree spanning_tree(const TruncatedSimplicialSet& s, int basepoint) {
  Tree t;
  const int nv = s.size(0), ne = s.levels() >= 1 ? s.size(1) : 0;
  t.component.assign(nv, -1);
  t.path.assign(nv, {});
  t.tree_edge.assign(ne, false);
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (edge, other)
  for (int e = 0; e < ne; ++e) {
    adj[s.d(1, 1, e)].push_back({e, +1});
    adj[s.d(0, 1, e)].push_back({e, -1});
  }
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  if (basepoint < nv) std::swap(order[0], order[basepoint]);
  for (int root : order) {
    if (t.component[root] >= 0) continue;
    std::deque<int> q{root};
    t.component[root] = t.components;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto [e, dir] : adj[v]) {
        int w = dir > 0 ? s.d(0, 1, e) : s.d(1, 1, e);
        if (t.component[w] >= 0) continue;
        t.component[w] = t.components;
        t.tree_edge[e] = true;
        t.path[w] = t.path[v];
        t.path[w].push_back({e, dir});
        q.push_back(w);
      }
    }
    ++t.components;
  }
  return t;
}

}  // namespace

HomotopyLow pi0_pi1(const TruncatedSimplicialSet& s, int basepoint) {
  HomotopyLow r;
  auto t = spanning_tree(s, basepoint);
  r.components = t.components;
  r.component = t.component;
  if (s.levels() < 2) {
    r.caveat = "fewer than 2 levels: the fundamental group is not determined";
    return r;
  }
  const int ne = s.size(1);
  const int base = t.component.empty() ? -1 : t.component[basepoint];
  GroupPresentation p;
  r.edge_generator.assign(ne, -1);
  for (int e = 0; e < ne; ++e)
    if (!t.tree_edge[e] && t.component[s.d(1, 1, e)] == base) r.edge_generator[e] = p.generators++;
  auto letter = [&](int e, int sign) -> std::optional<int> {
    if (r.edge_generator[e] < 0) return std::nullopt;
    return sign * (r.edge_generator[e] + 1);
  };
  for (int x = 0; x < s.size(2); ++x) {
    if (t.component[s.d(1, 1, s.d(0, 2, x))] != base) continue;
    std::vector<int> w;
    for (auto [e, sign] : {std::pair{s.d(2, 2, x), 1}, std::pair{s.d(0, 2, x), 1}, std::pair{s.d(1, 2, x), -1}})
      if (auto l = letter(e, sign)) w.push_back(*l);
    // free reduction
    std::vector<int> red;
    for (int l : w) {
      if (!red.empty() && red.back() == -l)
        red.pop_back();
      else
        red.push_back(l);
    }
    if (!red.empty()) p.relators.push_back(red);
  }
  std::sort(p.relators.begin(), p.relators.end());
  p.relators.erase(std::unique(p.relators.begin(), p.relators.end()), p.relators.end());
  r.pi1 = p;
  return r;
}

LowComparison compare_low_homotopy(const TruncatedSimplicialSet& src, const TruncatedSimplicialSet& tgt,
                                   const SimplicialMap& f, int basepoint) {
  LowComparison out;
  auto a = pi0_pi1(src, basepoint);
  const int tb = f.map[0][basepoint];
  auto b = pi0_pi1(tgt, tb);
  std::map<int, int> image;
  bool ok = true;
  for (int v = 0; v < src.size(0); ++v) {
    int cs = a.component[v], ct = b.component[f.map[0][v]];
    auto [it, fresh] = image.emplace(cs, ct);
    ok = ok && it->second == ct;
  }
  std::set<int> hit;
  for (auto [cs, ct] : image) hit.insert(ct);
  out.pi0_bijective = ok && static_cast<int>(hit.size()) == a.components && static_cast<int>(hit.size()) == b.components;
  if (!a.pi1 || !b.pi1) return out;
  auto ra = regular_representation(*a.pi1), rb = regular_representation(*b.pi1);
  if (!ra || !rb) return out;
  out.source_order = a.pi1->generators ? static_cast<int>(ra->front().size()) : 1;
  out.target_order = b.pi1->generators ? static_cast<int>(rb->front().size()) : 1;
  const int n = out.target_order;
  auto tree = spanning_tree(src, basepoint);
  std::vector<std::vector<int>> inverse(rb->size(), std::vector<int>(n));
  for (std::size_t g = 0; g < rb->size(); ++g)
    for (int c = 0; c < n; ++c) inverse[g][(*rb)[g][c]] = c;
  // right multiplication by the image of one target edge
  auto apply = [&](std::vector<int> perm, int edge, int sign) {
    int g = b.edge_generator[edge];
    if (g < 0) return perm;
    for (int& c : perm) c = sign > 0 ? (*rb)[g][c] : inverse[g][c];
    return perm;
  };
  std::vector<std::vector<int>> images;
  for (int e = 0; e < src.size(1); ++e) {
    if (a.edge_generator[e] < 0) continue;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    // word: path(b → d1 e), e, path(d0 e → b)^{-1}; image of each edge under f
    EdgePath word = tree.path[src.d(1, 1, e)];
    word.push_back({e, 1});
    const auto& back = tree.path[src.d(0, 1, e)];
    for (auto it = back.rbegin(); it != back.rend(); ++it) word.push_back({it->first, -it->second});
    for (auto [edge, sign] : word) perm = apply(perm, f.map[1][edge], sign);
    images.push_back(perm);
  }
  // orbit of coset 0 under the image generators = order of the image subgroup
  std::vector<bool> seen(n, false);
  std::deque<int> q{0};
  seen[0] = true;
  int reached = 1;
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (const auto& p : images) {
      int d = p[c];
      if (!seen[d]) seen[d] = true, ++reached, q.push_back(d);
    }
  }
  out.pi1_iso = out.source_order == out.target_order && reached == n;
  return out;
}

}  // namespace dgl
