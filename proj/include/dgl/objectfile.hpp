#pragma once

#include "dgl/deformation.hpp"
#include "dgl/simplicial.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace dgl {

/// Schema or label error, with the 1-based line of the offending text (0 if unknown).
class ObjectFileError : public ValidationError {
public:
  ObjectFileError(const std::string& message, int line)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

struct PolynomialSystem {
  std::vector<std::string> variables;
  std::vector<Polynomial> generators;
};

/// Maurer-Cartan candidates in the host m⊗g (or g when no algebra is named).
struct SampleSet {
  std::string lie;
  std::string artinian;
  std::vector<std::map<std::string, Rational>> elements;
};

/// Derivations of `on`, one per basis element of `lie`.
struct ActionSpec {
  std::string lie;
  std::string on;
  std::map<std::string, std::map<std::string, std::map<std::string, Rational>>> images;  // x -> (h label -> image)
};

using ObjectValue = std::variant<DgLieAlgebra, FreeLieTruncated, ArtinianDgAlgebra, Cdga, FilteredComplex, PolynomialSystem,
                                 SampleSet, ActionSpec, SimplicialCategory>;

std::string kind_name(const ObjectValue& v);

/// A parsed object file: named declarations plus requested operations.
///
///   {"objects": {"g": {"type": "lie", "basis": {"1": ["a"], "2": ["c"]},
///                      "differential": {"a": {"c": "1"}}, "bracket": [["a", "a", {"c": "1"}]]}},
///    "operations": [{"op": "pi0", "lie": "g"}]}
///
/// Names not declared in the file fall back to the built-in catalog.
struct ObjectFile {
  std::string text;
  std::vector<std::string> order;
  std::map<std::string, ObjectValue> objects;
  std::vector<nlohmann::ordered_json> operations;

  const ObjectValue& get(const std::string& name) const;
  template <class T>
  const T& as(const std::string& name) const {
    const auto& v = get(name);
    if (const T* p = std::get_if<T>(&v)) return *p;
    throw ValidationError("object '" + name + "' is a " + kind_name(v) + ", not the expected kind");
  }
  /// 1-based line of the first occurrence of the quoted string, or 0.
  int line_of(const std::string& token) const;
};

ObjectFile parse_object_file(const std::string& text);
ObjectFile load_object_file(const std::string& path);

/// Built-in objects: sl2, heisenberg, ac, ut4, line0..line2, sl2_example, k, dual0..dual2,
/// kx2, kx3, k2, S3, Z2, Z3, trivial, monoid, E(Z2), u, u2, u-1.
const ObjectValue& builtin_object(const std::string& name);
std::vector<std::string> builtin_names();

/// Sums of terms like "3/2*u^2*v" in the given variables.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables);

/// The host m⊗g (or g) of a sample, and its elements as coordinate vectors.
DgLieAlgebra sample_host(const ObjectFile& f, const SampleSet& s);
std::vector<Vec> sample_vectors(const DgLieAlgebra& host, const SampleSet& s);

}  // namespace dgl
