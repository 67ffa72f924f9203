#pragma once

#include "dgl/mc.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dgl {

/// Levels 0..L of a simplicial set with finite levels. face[n][i][x] is d_i of
/// simplex x in level n (n >= 1); degeneracy[n][i][x] is s_i of x in level n (n < L).
struct TruncatedSimplicialSet {
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<std::vector<int>>> face;
  std::vector<std::vector<std::vector<int>>> degeneracy;

  int levels() const { return static_cast<int>(labels.size()) - 1; }
  int size(int n) const { return static_cast<int>(labels[n].size()); }
  int find(int n, const std::string& label) const;  // -1 if absent
  int d(int i, int n, int x) const { return face[n][i][x]; }
  int s(int i, int n, int x) const { return degeneracy[n][i][x]; }
};

/// First violated simplicial identity, if any.
std::optional<std::string> simplicial_identity_violation(const TruncatedSimplicialSet& s);

/// The constant simplicial set on `points`, levels 0..L.
TruncatedSimplicialSet constant_simplicial_set(const std::vector<std::string>& points, int levels);

/// The 0-coskeleton E(X): n-simplices are (n+1)-tuples of points.
TruncatedSimplicialSet codiscrete_simplicial_set(const std::vector<std::string>& points, int levels);

TruncatedSimplicialSet disjoint_union(const TruncatedSimplicialSet& a, const TruncatedSimplicialSet& b);

/// Level maps; map[n][x] is the image of simplex x in level n.
struct SimplicialMap {
  std::vector<std::vector<int>> map;
};

std::optional<std::string> simplicial_map_violation(const TruncatedSimplicialSet& src, const TruncatedSimplicialSet& tgt,
                                                    const SimplicialMap& f);

/// A simplicial category with finite hom levels. compose[n][{x, y, z}][g][f] is
/// g∘f in hom_n(x, z) for f ∈ hom_n(x, y), g ∈ hom_n(y, z).
struct SimplicialCategory {
  std::vector<std::string> objects;
  std::map<std::pair<int, int>, TruncatedSimplicialSet> hom;
  std::vector<std::map<std::array<int, 3>, std::vector<std::vector<int>>>> compose;
  std::vector<std::vector<int>> identity;  // identity[n][x] ∈ hom_n(x, x)

  int levels() const;
  const TruncatedSimplicialSet& arrows(int x, int y) const { return hom.at({x, y}); }
  int comp(int n, int x, int y, int z, int g, int f) const { return compose[n].at({x, y, z})[g][f]; }
};

/// Associativity, unitality, and compatibility of composition and identities with faces and degeneracies.
std::optional<std::string> simplicial_category_violation(const SimplicialCategory& c);

/// A category (objects, hom sets, composition) viewed as a constant simplicial category.
struct FiniteCategory {
  std::vector<std::string> objects;
  std::map<std::pair<int, int>, std::vector<std::string>> arrows;
  std::map<std::array<int, 3>, std::vector<std::vector<int>>> compose;  // [g][f] = g∘f
  std::vector<int> identity;
};

FiniteCategory group_category(const std::vector<std::string>& names, const std::vector<std::vector<int>>& mult);
/// The chaotic groupoid on `objects` with every hom set a copy of the group.
FiniteCategory chaotic_groupoid(int objects, const std::vector<std::string>& names, const std::vector<std::vector<int>>& mult);
FiniteCategory symmetric_group_category(int n);
FiniteCategory cyclic_group_category(int n);
FiniteCategory trivial_category();
/// One object, {1, e} with e∘e = e.
FiniteCategory idempotent_monoid_category();

SimplicialCategory constant_simplicial_category(const FiniteCategory& c, int levels);
/// hom_n(x, y) = hom(x, y)^{n+1} with componentwise composition.
SimplicialCategory codiscrete_simplicial_category(const FiniteCategory& c, int levels);

/// The gauge groupoid of a nilpotent algebra with no negative degrees on a finite
/// set of Maurer-Cartan elements, with hom_n(x, y) = {γ ∈ exp((h⊗Ω_n)⁰) : γ·x = y}.
/// With constant x, y a transport must be constant, so hom_n = hom_0. Requires
/// free action on the sample (finite hom sets) and decided equivalences.
struct GaugeSimplicialGroupoid {
  SimplicialCategory category;
  std::map<std::pair<int, int>, Vec> transport;  // logarithm of the unique arrow
};
GaugeSimplicialGroupoid gauge_simplicial_groupoid(const DgLieAlgebra& h, const std::vector<Vec>& objects, int levels,
                                                  int depth = 64);

TruncatedSimplicialSet tn_nerve(const SimplicialCategory& c, int levels);
TruncatedSimplicialSet wbar_nerve(const SimplicialCategory& c, int levels);
/// The ordinary nerve of a category.
TruncatedSimplicialSet category_nerve(const FiniteCategory& c, int levels);

SimplicialMap pi_map(const SimplicialCategory& c, const TruncatedSimplicialSet& tn, const TruncatedSimplicialSet& wbar);
SimplicialMap rho_map(const SimplicialCategory& c, const TruncatedSimplicialSet& tn, const TruncatedSimplicialSet& wbar);
SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f);
bool is_identity(const SimplicialMap& f);

/// Exhaustive horn search: every horn Λ^n_k with 1 <= n <= max_level has a filler.
struct KanSearch {
  bool kan = true;
  int horns = 0;
  std::string failure;
};
KanSearch horn_search(const TruncatedSimplicialSet& s, int max_level = 2);

struct WnConditions {
  bool homs_kan = true;  // bounded: horns of dimension <= 2
  bool groupoid = true;
  std::string caveat;
};
WnConditions check_wn_conditions(const SimplicialCategory& c);

/// Finitely presented group; generators 0..n-1, relators are words of ±(g+1).
struct GroupPresentation {
  int generators = 0;
  std::vector<std::vector<int>> relators;
};

/// Coset enumeration over the trivial subgroup; the regular permutation
/// representation of each generator, or nullopt past `max_cosets`.
std::optional<std::vector<std::vector<int>>> regular_representation(const GroupPresentation& p, int max_cosets = 20000);

struct HomotopyLow {
  int components = 0;
  std::vector<int> component;          // per vertex
  std::optional<GroupPresentation> pi1;  // edge-path group at the basepoint
  std::vector<int> edge_generator;     // per edge: generator index, or -1 for tree/other component
  std::string caveat;
};
HomotopyLow pi0_pi1(const TruncatedSimplicialSet& s, int basepoint = 0);

/// Does f induce a bijection on π₀ and an isomorphism of (finite) fundamental groups at the basepoint?
struct LowComparison {
  bool pi0_bijective = false;
  std::optional<bool> pi1_iso;  // nullopt when a group is not enumerable
  int source_order = 0, target_order = 0;
};
LowComparison compare_low_homotopy(const TruncatedSimplicialSet& src, const TruncatedSimplicialSet& tgt,
                                   const SimplicialMap& f, int basepoint = 0);

/// Order of the group, when finite and enumerable.
std::optional<int> group_order(const GroupPresentation& p, int max_cosets = 20000);

}  // namespace dgl
