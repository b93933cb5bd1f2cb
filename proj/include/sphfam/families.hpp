#pragma once

// Families of simplices, their diagrams, canonical integer codes and
// representatives.

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

#include "sphfam/canonical.hpp"
#include "sphfam/rootspace.hpp"

namespace sphfam {

/// Full-rank set of lines of an ambient root system; ids strictly increasing.
struct Family {
  GroupKind ambient;
  std::vector<int> line_ids;

  friend auto operator<=>(const Family&, const Family&) = default;
};

// Validates sortedness, range and full rank.
Family make_family(GroupKind ambient, std::vector<int> line_ids);

struct FamilyDiagram {
  int n = 0;
  std::vector<EdgeClass> edge;  // n*n, symmetric, Orth on the diagonal

  explicit FamilyDiagram(int size = 0) : n(size), edge(static_cast<std::size_t>(size) * size, EdgeClass::Orth) {}
  EdgeClass at(int i, int j) const { return edge[static_cast<std::size_t>(i) * n + j]; }
  void set(int i, int j, EdgeClass c) {
    edge[static_cast<std::size_t>(i) * n + j] = c;
    edge[static_cast<std::size_t>(j) * n + i] = c;
  }
  DigitMatrix digits() const;  // digit = EdgeClass value
  friend bool operator==(const FamilyDiagram&, const FamilyDiagram&) = default;
};

/// Dihedral angle k*pi/l, reduced.
struct Angle {
  int k = 1;
  int l = 2;
  Angle() = default;
  Angle(int num, int den);
  Rational value() const { return Rational(k, l); }
  std::string to_string() const { return std::to_string(k) + "/" + std::to_string(l); }
  friend bool operator==(const Angle&, const Angle&) = default;
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    const int c = cmp(a.value(), b.value());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

// Dihedral angle between facets with outward normals whose pair class is
// `cls` and whose inner product has sign `sign`.
Angle dihedral_angle(EdgeClass cls, int sign);
// Inverse of dihedral_angle; throws for angles outside the five classes.
PairClass pair_class_of(Angle a);

/// Family diagram plus, per pair, the sign of the normals' inner product
/// (negative = acute dihedral angle).
struct LabeledDiagram {
  FamilyDiagram diagram;
  std::vector<signed char> sign;  // n*n, symmetric, 0 on Orth pairs

  int n() const { return diagram.n; }
  int sign_at(int i, int j) const { return sign[static_cast<std::size_t>(i) * diagram.n + j]; }
  bool acute(int i, int j) const { return sign_at(i, j) < 0; }
  Angle angle(int i, int j) const { return dihedral_angle(diagram.at(i, j), sign_at(i, j)); }
  // Flips the normal of vertex i.
  void flip(int i);
  DigitMatrix digits() const;  // 0 for Orth, 2*class-1 (obtuse) or 2*class (acute)
  friend bool operator==(const LabeledDiagram&, const LabeledDiagram&) = default;
};

LabeledDiagram labeled_from_angles(const std::vector<std::vector<Angle>>& angles);

enum class CodeScheme { Binary, Base4, General };

std::string_view to_string(CodeScheme s);
// Binary for A/D/E, Base4 for H, General for B/F4.
CodeScheme default_scheme(GroupKind kind);

struct CanonicalCode {
  CodeScheme scheme = CodeScheme::General;
  std::vector<std::uint8_t> digits;  // scheme digits, most significant first

  mpz_class value() const;
  std::string to_string() const { return value().get_str(); }
  std::string digit_string() const;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend std::strong_ordering operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
    if (auto c = a.digits.size() <=> b.digits.size(); c != 0) return c;
    return a.digits <=> b.digits;
  }
};

FamilyDiagram diagram_of(const Family& family);
LabeledDiagram labeled_diagram_of(const Family& family);
CanonicalCode canonical_code(const FamilyDiagram& diagram, CodeScheme scheme);
// Converts a universal digit reading (EdgeClass values) to a scheme code.
CanonicalCode code_from_reading(const std::vector<std::uint8_t>& reading, CodeScheme scheme);

// Canonical string of a labeled diagram up to vertex relabeling.
std::string labeled_key(const LabeledDiagram& d);

// Complete isometry invariant of the family spanned by a labeled diagram:
// the canonical unsigned reading plus the switching class of the signs.
std::string family_key(const LabeledDiagram& d);
std::string family_key(const Family& family);
// Same key from raw tables: classes as EdgeClass digits, signs with stride kMaxVertices.
using SignTable = std::array<signed char, kMaxVertices * kMaxVertices>;
std::string family_key(const DigitMatrix& classes, const SignTable& signs);

// All sign patterns modulo global negation, deduplicated up to isomorphism.
std::vector<LabeledDiagram> signed_simplices(const LabeledDiagram& d);
std::vector<LabeledDiagram> signed_simplices(const Family& family);

// Sorted pairwise dihedral angles of the member with the smallest angle sum.
std::vector<Angle> min_angle_sum_representative(const Family& family);
std::vector<Angle> min_angle_sum_representative(const LabeledDiagram& d);

// DOT multigraph: k-fold edges for pi/k classes, the 2pi/5 class as a split 3-fold edge.
std::string to_dot(const FamilyDiagram& d, const std::string& name = "diagram");
// Parses an upper-triangle reading of EdgeClass digits (0..4).
FamilyDiagram diagram_from_digits(std::string_view digits);
std::string diagram_digits(const FamilyDiagram& d);

}  // namespace sphfam
