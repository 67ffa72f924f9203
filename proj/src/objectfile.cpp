#include "dgl/objectfile.hpp"

#include "dgl/catalog.hpp"
#include "dgl/quillen.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dgl {

using json = nlohmann::ordered_json;

std::string kind_name(const ObjectValue& v) {
  static const char* names[] = {"lie algebra", "free presentation", "artinian algebra", "cdga", "filtered complex",
                                "polynomial system", "sample", "action", "simplicial category"};
  return names[v.index()];
}

int ObjectFile::line_of(const std::string& token) const {
  auto pos = text.find("\"" + token + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

const ObjectValue& ObjectFile::get(const std::string& name) const {
  auto it = objects.find(name);
  if (it != objects.end()) return it->second;
  try {
    return builtin_object(name);
  } catch (const ValidationError&) {
    throw ObjectFileError("undefined object '" + name + "'", line_of(name));
  }
}

// ---- polynomials ----

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables) {
  Polynomial p;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> Polynomial {
    throw ValidationError("polynomial '" + text + "': " + why + " at offset " + std::to_string(i));
  };
  skip();
  if (i == text.size()) fail("empty");
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (text[i] == '+' || text[i] == '-') sign = text[i++] == '-' ? -1 : 1;
    Rational coef = sign;
    Monomial m(variables.size(), 0);
    bool factor = false;
    for (;;) {
      skip();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        std::size_t j = i;
        while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
        coef *= parse_rational(text.substr(i, j - i));
        i = j;
      } else if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        std::string name = text.substr(i, j - i);
        auto it = std::find(variables.begin(), variables.end(), name);
        if (it == variables.end()) throw ValidationError("polynomial '" + text + "': undefined variable '" + name + "'");
        i = j;
        int e = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip();
          std::size_t k = i;
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          if (k == i) fail("missing exponent");
          e = std::stoi(text.substr(i, k - i));
          i = k;
        }
        m[it - variables.begin()] += e;
      } else {
        fail("expected a number or variable");
      }
      factor = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!factor) fail("empty term");
    p[m] += coef;
    if (p[m] == 0) p.erase(m);
    skip();
    if (i < text.size() && text[i] != '+' && text[i] != '-') fail("unexpected character");
  }
  return p;
}

// ---- built-ins ----

namespace {

std::map<std::string, ObjectValue> make_builtins() {
  std::map<std::string, ObjectValue> b;
  b["sl2"] = catalog::sl2();
  b["heisenberg"] = catalog::heisenberg();
  b["ac"] = catalog::ac_algebra();
  b["ut4"] = catalog::upper_triangular4();
  for (int d = 0; d <= 2; ++d) b["line" + std::to_string(d)] = catalog::line(d);
  b["sl2_example"] = sl2_example(3).presentation;
  b["k"] = ArtinianDgAlgebra(catalog::ground_field());
  for (int n = 0; n <= 2; ++n) b["dual" + std::to_string(n)] = dual_numbers(n);
  b["kx2"] = ArtinianDgAlgebra(catalog::truncated_polynomial(1));
  b["kx3"] = ArtinianDgAlgebra(catalog::truncated_polynomial(2));
  b["k2"] = catalog::split_product();
  b["S3"] = constant_simplicial_category(symmetric_group_category(3), 3);
  b["Z2"] = constant_simplicial_category(cyclic_group_category(2), 3);
  b["Z3"] = constant_simplicial_category(cyclic_group_category(3), 3);
  b["trivial"] = constant_simplicial_category(trivial_category(), 3);
  b["monoid"] = constant_simplicial_category(idempotent_monoid_category(), 3);
  b["E(Z2)"] = codiscrete_simplicial_category(cyclic_group_category(2), 3);
  b["u"] = PolynomialSystem{{"u"}, {parse_polynomial("u", {"u"})}};
  b["u2"] = PolynomialSystem{{"u"}, {parse_polynomial("u^2", {"u"})}};
  b["u-1"] = PolynomialSystem{{"u"}, {parse_polynomial("u - 1", {"u"})}};
  return b;
}

const std::map<std::string, ObjectValue>& builtins() {
  static const auto b = make_builtins();
  return b;
}

}  // namespace

const ObjectValue& builtin_object(const std::string& name) {
  auto it = builtins().find(name);
  if (it == builtins().end()) throw ValidationError("no built-in object '" + name + "'");
  return it->second;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : builtins()) out.push_back(k);
  return out;
}

// ---- declarations ----

namespace {

struct Parser {
  ObjectFile& f;

  [[noreturn]] void error(const std::string& msg, const std::string& token) const {
    throw ObjectFileError(msg, f.line_of(token));
  }

  Rational number(const json& v, const std::string& where) const {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) error("coefficients must be integers or \"p/q\" strings", where);
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ValidationError& e) {
      error(e.what(), v.get<std::string>());
    }
  }

  GradedSpace space(const json& basis, const std::string& name) const {
    if (!basis.is_object()) error("'basis' must map degrees to label lists", name);
    std::map<int, std::vector<std::string>> comps;
    for (const auto& [deg, labels] : basis.items()) {
      int d;
      try {
        d = std::stoi(deg);
      } catch (...) {
        error("degree '" + deg + "' is not an integer", deg);
      }
      for (const auto& l : labels) comps[d].push_back(l.get<std::string>());
    }
    return GradedSpace(comps);
  }

  int index(const GradedSpace& s, const std::string& label) const {
    auto p = s.find(label);
    if (!p) error("undefined label '" + label + "'", label);
    return s.offset(p->first) + p->second;
  }

  SparseRow row(const GradedSpace& s, const json& v, const std::string& where) const {
    if (!v.is_object()) error("expected a map from labels to coefficients", where);
    SparseRow r;
    for (const auto& [label, c] : v.items()) {
      Rational q = number(c, label);
      if (q != 0) r[index(s, label)] += q;
    }
    return r;
  }

  std::map<int, SparseMatrix> differential(const GradedSpace& s, const json& d) const {
    std::map<int, SparseMatrix> blocks;
    for (int deg : s.degrees()) blocks[deg] = SparseMatrix(s.dim(deg + 1), s.dim(deg));
    if (d.is_null()) return blocks;
    for (const auto& [label, image] : d.items()) {
      auto src = s.find(label);
      if (!src) error("undefined label '" + label + "'", label);
      for (const auto& [t, c] : image.items()) {
        auto tgt = s.find(t);
        if (!tgt) error("undefined label '" + t + "'", t);
        if (tgt->first != src->first + 1) error("d(" + label + ") has a term '" + t + "' of the wrong degree", t);
        blocks[src->first].add_to(tgt->second, src->second, number(c, t));
      }
    }
    return blocks;
  }

  std::map<std::pair<int, int>, SparseRow> table(const GradedSpace& s, const json& entries, const std::string& what) const {
    std::map<std::pair<int, int>, SparseRow> t;
    if (entries.is_null()) return t;
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 3) error(what + " entries are [x, y, {label: coefficient}]", what);
      int i = index(s, e[0].get<std::string>()), j = index(s, e[1].get<std::string>());
      t[{i, j}] = row(s, e[2], e[0].get<std::string>());
    }
    return t;
  }

  CochainComplex complex(const json& o, const std::string& name) const {
    GradedSpace s = space(o.value("basis", json::object()), name);
    auto d = differential(s, o.contains("differential") ? o["differential"] : json());
    if (auto v = complex_violation(s, d)) error("'" + name + "': " + *v, name);
    return CochainComplex(s, d);
  }

  DgLieAlgebra lie(const json& o, const std::string& name) const {
    if (o.contains("catalog")) {
      std::string c = o["catalog"];
      if (c == "line") return catalog::line(o.value("degree", 1), o.value("label", std::string("x")));
      const auto& v = builtin_object(c);
      if (const auto* g = std::get_if<DgLieAlgebra>(&v)) return *g;
      error("'" + c + "' is not a catalog Lie algebra", c);
    }
    if (o.contains("tensor")) {
      const auto& parts = o["tensor"];
      const Cdga& b = cdga(parts[0].get<std::string>());
      return tensor_cdga_lie(b, lie_ref(parts[1].get<std::string>()));
    }
    if (o.contains("sum")) return direct_sum(lie_ref(o["sum"][0]), lie_ref(o["sum"][1]));
    CochainComplex c = complex(o, name);
    auto br = table(c.space(), o.contains("bracket") ? o["bracket"] : json(), "bracket");
    try {
      return DgLieAlgebra(c, br);
    } catch (const ValidationError& e) {
      error("'" + name + "' is not a dg Lie algebra: " + e.what(), name);
    }
  }

  const DgLieAlgebra& lie_ref(const std::string& name) const {
    const auto& v = f.get(name);
    if (const auto* g = std::get_if<DgLieAlgebra>(&v)) return *g;
    if (const auto* p = std::get_if<FreeLieTruncated>(&v)) return p->lie;
    error("'" + name + "' is not a Lie algebra", name);
  }

  const Cdga& cdga(const std::string& name) const {
    const auto& v = f.get(name);
    if (const auto* c = std::get_if<Cdga>(&v)) return *c;
    if (const auto* a = std::get_if<ArtinianDgAlgebra>(&v)) return a->algebra();
    error("'" + name + "' is not a cdga", name);
  }

  Cdga cdga_decl(const json& o, const std::string& name) const {
    if (o.contains("catalog")) {
      std::string c = o["catalog"];
      if (c == "truncated_polynomial") return catalog::truncated_polynomial(o.value("n", 1), o.value("degree", 0));
      if (c == "truncated_polynomial_ideal") return catalog::truncated_polynomial_ideal(o.value("n", 1), o.value("degree", 0));
      if (c == "koszul_truncated") return catalog::koszul_truncated(o.value("n", 1));
      if (c == "split_product") return catalog::split_product();
      if (c == "ground_field") return catalog::ground_field();
      if (c == "dual_numbers") return dual_numbers(o.value("n", 0)).algebra();
      error("unknown cdga catalog entry '" + c + "'", c);
    }
    CochainComplex c = complex(o, name);
    auto pr = table(c.space(), o.contains("product") ? o["product"] : json(), "product");
    try {
      return Cdga(c, pr);
    } catch (const ValidationError& e) {
      error("'" + name + "': " + e.what(), name);
    }
  }

  ObjectValue declare(const std::string& name, const json& o) const {
    if (!o.is_object() || !o.contains("type")) error("object '" + name + "' needs a 'type'", name);
    const std::string type = o["type"];
    if (type == "lie") {
      if (o.value("catalog", std::string()) == "sl2_example") return sl2_example(o.value("weight", 3)).presentation;
      return lie(o, name);
    }
    if (type == "cdga") return cdga_decl(o, name);
    if (type == "artinian") {
      try {
        return ArtinianDgAlgebra(cdga_decl(o, name), o.value("unit", std::string("1")));
      } catch (const ObjectFileError&) {
        throw;
      } catch (const ValidationError& e) {
        error("'" + name + "' is not artinian: " + e.what(), name);
      }
    }
    if (type == "filtered") {
      CochainComplex c = complex(o, name);
      std::map<int, std::vector<int>> weights;
      for (int d : c.space().degrees()) weights[d].assign(c.dim(d), o.value("floor", 0));
      if (o.contains("weights"))
        for (const auto& [label, w] : o["weights"].items()) {
          auto p = c.space().find(label);
          if (!p) error("undefined label '" + label + "'", label);
          weights[p->first][p->second] = w.get<int>();
        }
      try {
        return FilteredComplex(c, weights, o.value("floor", 0));
      } catch (const ValidationError& e) {
        error("'" + name + "': " + e.what(), name);
      }
    }
    if (type == "polynomials") {
      PolynomialSystem p;
      p.variables = o.at("variables").get<std::vector<std::string>>();
      for (const auto& g : o.at("generators")) {
        try {
          p.generators.push_back(parse_polynomial(g.get<std::string>(), p.variables));
        } catch (const ValidationError& e) {
          error(e.what(), g.get<std::string>());
        }
      }
      return p;
    }
    if (type == "sample") {
      SampleSet s;
      s.lie = o.at("lie");
      s.artinian = o.value("artinian", std::string());
      for (const auto& e : o.at("elements")) {
        std::map<std::string, Rational> m;
        for (const auto& [label, c] : e.items()) m[label] = number(c, label);
        s.elements.push_back(m);
      }
      return s;
    }
    if (type == "action") {
      ActionSpec a;
      a.lie = o.at("lie");
      a.on = o.at("on");
      for (const auto& [x, images] : o.at("derivations").items())
        for (const auto& [u, img] : images.items())
          for (const auto& [v, c] : img.items()) a.images[x][u][v] = number(c, v);
      return a;
    }
    if (type == "simplicial-category") {
      std::string g = o.value("group", std::string("trivial"));
      int levels = o.value("levels", 3), objects = o.value("objects", 1);
      FiniteCategory c;
      if (g == "monoid") {
        c = idempotent_monoid_category();
      } else {
        if (g == "trivial") {
          c = trivial_category();
        } else if (g.size() > 1 && g[0] == 'S') {
          c = symmetric_group_category(std::stoi(g.substr(1)));
        } else if (g.size() > 1 && g[0] == 'Z') {
          c = cyclic_group_category(std::stoi(g.substr(1)));
        } else {
          error("unknown group '" + g + "'", g);
        }
        if (objects > 1) c = chaotic_groupoid(objects, c.arrows.at({0, 0}), c.compose.at({0, 0, 0}));
      }
      std::string construction = o.value("construction", std::string("constant"));
      if (construction == "constant") return constant_simplicial_category(c, levels);
      if (construction == "codiscrete") return codiscrete_simplicial_category(c, levels);
      error("unknown construction '" + construction + "'", construction);
    }
    error("unknown object type '" + type + "'", type);
  }
};

}  // namespace

ObjectFile parse_object_file(const std::string& text) {
  ObjectFile f;
  f.text = text;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(std::min(e.byte, text.size())), '\n'));
    throw ObjectFileError(std::string("syntax error: ") + e.what(), line);
  }
  if (!doc.is_object()) throw ObjectFileError("the document must be a JSON object", 1);
  Parser p{f};
  try {
    if (doc.contains("objects"))
      for (const auto& [name, o] : doc["objects"].items()) {
        f.objects[name] = p.declare(name, o);
        f.order.push_back(name);
      }
    if (doc.contains("operations"))
      for (const auto& op : doc["operations"]) {
        if (!op.is_object() || !op.contains("op")) throw ObjectFileError("operations need an 'op' field", f.line_of("operations"));
        for (const auto& [key, v] : op.items())
          if (key != "op" && v.is_string() && !v.get<std::string>().empty() && key != "n" && key != "with")
            (void)f.get(v.get<std::string>());
        f.operations.push_back(op);
      }
  } catch (const json::exception& e) {
    throw ObjectFileError(std::string("schema error: ") + e.what(), 0);
  }
  return f;
}

ObjectFile load_object_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_object_file(ss.str());
}

DgLieAlgebra sample_host(const ObjectFile& f, const SampleSet& s) {
  const auto& v = f.get(s.lie);
  const DgLieAlgebra* g = std::get_if<DgLieAlgebra>(&v);
  if (!g) {
    if (const auto* p = std::get_if<FreeLieTruncated>(&v)) g = &p->lie;
    else throw ValidationError("sample: '" + s.lie + "' is not a Lie algebra");
  }
  if (s.artinian.empty()) return *g;
  return nerve_host(*g, f.as<ArtinianDgAlgebra>(s.artinian));
}

std::vector<Vec> sample_vectors(const DgLieAlgebra& host, const SampleSet& s) {
  std::vector<Vec> out;
  for (const auto& e : s.elements) {
    Vec v = host.zero();
    for (const auto& [label, c] : e) {
      auto p = host.space().find(label);
      if (!p) throw ValidationError("sample: undefined label '" + label + "' in the host");
      v[host.space().offset(p->first) + p->second] += c;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace dgl
