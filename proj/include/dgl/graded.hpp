#pragma once

#include "dgl/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgl {

/// Finite-dimensional Z-graded vector space with labelled basis. Global
/// indices run through the degrees in increasing order.
class GradedSpace {
public:
  GradedSpace() = default;
  explicit GradedSpace(std::map<int, std::vector<std::string>> components);

  static GradedSpace single(int degree, std::vector<std::string> labels);

  int dim(int degree) const;
  int total_dim() const;
  std::vector<int> degrees() const;  // degrees with nonzero dimension
  const std::vector<std::string>& labels(int degree) const;
  const std::map<int, std::vector<std::string>>& components() const { return components_; }

  /// (degree, position) of a label, searching all degrees.
  std::optional<std::pair<int, int>> find(const std::string& label) const;

  int offset(int degree) const;  // global index of the first basis vector in `degree`
  int degree_of(int global) const;
  const std::string& label_of(int global) const;

  bool operator==(const GradedSpace& o) const { return components_ == o.components_; }

private:
  std::map<int, std::vector<std::string>> components_;
};

/// Degree +1 differential, stored blockwise: diff(d) maps degree d to d+1
/// (rows = dim(d+1), cols = dim(d)). d∘d = 0 is checked at construction.
class CochainComplex {
public:
  CochainComplex() = default;
  CochainComplex(GradedSpace space, std::map<int, SparseMatrix> diff);

  static CochainComplex zero_differential(GradedSpace space);

  const GradedSpace& space() const { return space_; }
  int dim(int degree) const { return space_.dim(degree); }
  SparseMatrix diff(int degree) const;
  const std::map<int, SparseMatrix>& blocks() const { return diff_; }

  /// Differential on the whole space in global indices.
  SparseMatrix total_differential() const;

  bool operator==(const CochainComplex& o) const;

private:
  GradedSpace space_;
  std::map<int, SparseMatrix> diff_;
};

/// Returns a description of the first d∘d ≠ 0 or shape violation, if any.
std::optional<std::string> complex_violation(const GradedSpace& space, const std::map<int, SparseMatrix>& diff);

struct ChainMap {
  CochainComplex source;
  CochainComplex target;
  std::map<int, SparseMatrix> blocks;  // degree -> (target dim × source dim)

  SparseMatrix block(int degree) const;
  bool commutes() const;
};

struct Cohomology {
  int dim = 0;
  std::vector<Vec> representatives;  // cycles in C^d, independent mod boundaries
};

Cohomology cohomology_at(const CochainComplex& c, int degree);
std::map<int, int> cohomology_dims(const CochainComplex& c);

CochainComplex shift(const CochainComplex& c, int n);
CochainComplex tensor(const CochainComplex& c, const CochainComplex& e);
CochainComplex truncate_good(const CochainComplex& c);
GradedSpace sym_power(const GradedSpace& v, int n);

/// Basis of S^n(V) as nondecreasing global-index tuples; odd labels appear at most once.
std::vector<std::vector<int>> sym_monomials(const GradedSpace& v, int n);

struct DoldKanData {
  std::vector<long> level_dims;  // dim of the simplicial vector space at levels 0..L
  std::vector<int> pi_dims;      // dim π_i for 0 <= i <= L
};

DoldKanData dold_kan_truncated(const CochainComplex& c, int levels);

/// "<a-2 b>"-style label for a linear combination of basis labels.
std::string combination_label(const Vec& v, const std::vector<std::string>& labels);
/// Index of the single entry equal to 1 when v is a unit vector, else -1.
int unit_index(const Vec& v);

/// Splits a matrix on the whole space (global indices) into blocks of the given degree.
std::map<int, SparseMatrix> degree_blocks(const GradedSpace& source, const GradedSpace& target,
                                          const SparseMatrix& total, int degree);

/// Relabels/permutes a complex: new basis in degree d is old basis permuted by perm[d].
CochainComplex permute_basis(const CochainComplex& c, const std::map<int, std::vector<int>>& perm);

}  // namespace dgl
