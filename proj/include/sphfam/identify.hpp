#pragma once

// Which reflection group a set of lines generates.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sphfam/families.hpp"
#include "sphfam/rootspace.hpp"

namespace sphfam {

/// Multiset of indecomposable factors in canonical order: G2(m) by m, then
/// A, B, D, E, F, H by rank. G2(3) is spelled A2 and G2(4) is spelled B2.
struct CoxeterType {
  std::vector<GroupKind> components;

  static CoxeterType of(std::vector<GroupKind> parts);
  // Rank-2 group of order 2m; m = 2 gives A1xA1.
  static CoxeterType dihedral(int m);

  int rank() const;
  bool indecomposable() const { return components.size() == 1; }
  std::string to_string() const;  // "A1xA2"; "" for the trivial group
  CoxeterType operator*(const CoxeterType& other) const;

  friend bool operator==(const CoxeterType&, const CoxeterType&) = default;
  friend auto operator<=>(const CoxeterType& a, const CoxeterType& b) { return a.to_string() <=> b.to_string(); }
};

CoxeterType parse_coxeter_type(std::string_view text);

using CoxeterMatrix = std::vector<std::vector<int>>;

// Standard Coxeter matrix of an indecomposable kind.
CoxeterMatrix coxeter_matrix(GroupKind kind);
// Matches each connected component against the finite types; throws Error
// for matrices that are not of finite type.
CoxeterType classify_coxeter_matrix(const CoxeterMatrix& m);

// Smallest superset of `lines` closed under mutual reflection; sorted.
std::vector<int> reflection_closure(std::span<const int> lines, const RootSpace& space);
// Simple lines of a closed line set (positive = canonical representative).
std::vector<int> simple_lines(std::span<const int> closed, const RootSpace& space);
CoxeterType coxeter_type(std::span<const int> lines, const RootSpace& space);
bool generates_full_group(const Family& family);

/// Group generated by reflections in unit normals with the given Gram matrix,
/// computed by closing the normals under reflection in their own basis. Returns
/// nullopt when more than `cap` lines appear (the group is infinite).
template <int D>
std::optional<CoxeterType> closure_type(const std::vector<std::vector<Quadratic<D>>>& gram, int cap);

// Largest line count of a finite reflection group of the given rank.
int max_lines_for_rank(int rank);

}  // namespace sphfam
