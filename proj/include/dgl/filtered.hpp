#pragma once

#include "dgl/graded.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dgl {

/// Increasing exhaustive filtration given by an adapted basis: every basis
/// vector of `total` carries the level where it first appears. Level i is the
/// span of the basis vectors of weight <= i. Levels below `floor` are zero and
/// the filtration is constant from `ceiling()` on.
class FilteredComplex {
public:
  FilteredComplex() = default;
  FilteredComplex(CochainComplex total, std::map<int, std::vector<int>> weights, int floor);

  /// τ: everything in level 0.
  static FilteredComplex trivial(CochainComplex c);

  const CochainComplex& total() const { return total_; }
  const std::map<int, std::vector<int>>& weights() const { return weights_; }
  int weight(int degree, int pos) const { return weights_.at(degree).at(pos); }
  int floor() const { return floor_; }
  int ceiling() const;

  std::vector<int> level(int i, int degree) const;  // positions of degree-`degree` basis in level i
  int level_dim(int i, int degree) const { return static_cast<int>(level(i, degree).size()); }
  CochainComplex level_complex(int i) const;

  bool operator==(const FilteredComplex& o) const;

private:
  CochainComplex total_;
  std::map<int, std::vector<int>> weights_;
  int floor_ = 0;
};

FilteredComplex tensor_filtered(const FilteredComplex& x, const FilteredComplex& y);

/// Graded module over R = k[t], deg t = 1. Components are stored for
/// weights floor..ceiling; above the ceiling the module is constant with t = id.
struct GradedRModule {
  int floor = 0;
  std::vector<CochainComplex> components;         // index w - floor
  std::vector<std::map<int, SparseMatrix>> t;     // t[w - floor]: weight w -> w+1, per degree
  bool flat = false;                              // tracked: every t injective

  int ceiling() const { return floor + static_cast<int>(components.size()) - 1; }
  CochainComplex component(int w) const;
  SparseMatrix t_map(int w, int degree) const;
  int dim(int w, int degree) const { return component(w).dim(degree); }

  /// Recomputes injectivity of every stored t.
  bool torsion_free() const;
};

GradedRModule rees(const FilteredComplex& v);
FilteredComplex phi(const GradedRModule& m);

/// dim (M ⊗_R N) at (weight, degree), from the explicit quotient
/// ⊕_{p+q=n} M_p⊗N_q / (tx⊗y − x⊗ty).
std::map<std::pair<int, int>, int> tensor_over_r_dims(const GradedRModule& m, const GradedRModule& n, int max_weight);

/// gr_n = V_n / V_{n-1} with the induced differential, for floor <= n <= ceiling.
std::map<int, CochainComplex> associated_graded(const FilteredComplex& v);

struct Admissibility {
  bool admissible = true;
  std::string certificate;  // violated condition when not admissible
};

/// Coalgebra filtrations: X_{-1} = 0 and X_0 = k·1.
Admissibility is_admissible_coalgebra(const FilteredComplex& x, const std::string& unit_label = "1");
/// Lie filtrations: g_0 = 0.
Admissibility is_admissible_lie(const FilteredComplex& g);

struct FilteredChainMap {
  FilteredComplex source;
  FilteredComplex target;
  std::map<int, SparseMatrix> blocks;
};

/// True iff f is a quasi-isomorphism on every level, in degrees lo..hi.
/// Throws ValidationError when f does not preserve levels.
bool filtered_qis_check(const FilteredChainMap& f, int lo, int hi);

/// True iff the chain map induces isomorphisms H^d for lo <= d <= hi.
bool is_quasi_isomorphism(const ChainMap& f, int lo, int hi);

}  // namespace dgl
