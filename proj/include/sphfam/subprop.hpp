#pragma once

// Vertex groups of simplices, the subgroup property and the discreteness
// decision built on it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphfam/families.hpp"
#include "sphfam/identify.hpp"

namespace sphfam {

/// Entry i: group generated by the facets other than facet i. nullopt marks
/// an infinite group.
struct VertexProfile {
  std::vector<std::optional<CoxeterType>> types;

  std::string to_string() const;  // "{A3, A1xA2, G2(5)xA1, H3}", "inf" for infinite entries
  friend bool operator==(const VertexProfile&, const VertexProfile&) = default;
};

VertexProfile vertex_profile(const Family& family);
// Abstract signed simplex; throws Error when it mixes the 4- and 5-classes.
VertexProfile vertex_profile(const LabeledDiagram& d);

// Types of the Coxeter diagram of `kind` with one node deleted (sorted, unique).
std::vector<CoxeterType> coxeter_vertex_types(GroupKind kind);
bool satisfies_subgroup_property(const VertexProfile& p, GroupKind kind);

// Exact positive definiteness of the cosine Gram matrix.
bool realizable(const LabeledDiagram& d);

struct SubgroupSweepOptions {
  int jobs = 0;              // 0: OpenMP default, 1: serial reference path
  bool allow_large = false;  // lift the rank and size guard
  std::size_t max_examples = 10;
};

struct SubgroupSweepReport {
  GroupKind kind;
  std::vector<Angle> labels;         // angle alphabet of the sweep
  std::uint64_t assignments = 0;     // labels^(pairs)
  std::uint64_t realizable = 0;
  std::uint64_t with_property = 0;   // realizable and satisfying the property
  std::uint64_t from_families = 0;   // realizable labelings of families generating kind
  std::uint64_t counterexamples = 0; // symmetric difference of the last two
  std::vector<LabeledDiagram> examples;
  // Same comparison against every family inside kind, proper subgroups
  // included; informational.
  std::uint64_t subgroup_reading_mismatches = 0;
  std::vector<LabeledDiagram> subgroup_reading_examples;

  bool holds() const { return counterexamples == 0; }
};

// Sweeps every labeled diagram of rank(kind) over {1/2, 1/3, 2/3} and, unless
// kind is simply laced, {1/4, 3/4}. Simply laced kinds can skip the 4-angles:
// a pi/4 pair lies in some vertex group, which then has a B2 subgroup.
// Throws GuardRailError above rank 6 or 5e7 assignments without allow_large.
SubgroupSweepReport theorem_subgr_equivalence(GroupKind kind, const SubgroupSweepOptions& options = {});

struct Prop5Report {
  std::uint64_t assignments = 0;     // 7^6 labeled tetrahedra
  std::uint64_t realizable = 0;      // ... with a k/5 angle
  std::uint64_t with_property = 0;   // ... satisfying the property for H4
  std::uint64_t non_discrete = 0;    // ... generating an infinite group
  // Diagrams of the non-discrete ones, minus the diagrams of families inside H4.
  std::vector<FamilyDiagram> excluded;
  // Diagrams of non-discrete labelings that are also diagrams of H4 families.
  std::vector<FamilyDiagram> shared_with_h4;
};

Prop5Report prop5_report(int jobs = 0);
std::vector<FamilyDiagram> prop5_excluded_diagrams();

// Two mirrors at angle k*pi/m generate G2(m) exactly when gcd(k, m) = 1.
bool dihedral_discrete(int k, int m);

struct Classification {
  enum class Verdict { Discrete, NonDiscrete, Unknown };
  Verdict verdict = Verdict::Unknown;
  CoxeterType type;                   // Discrete only
  std::optional<CanonicalCode> code;  // indecomposable with a code scheme

  std::string to_string() const;  // "Discrete(H4), code 97", "NonDiscrete", "Unknown"
};

// angles[i][j] = k*pi/l between facets i and j; the diagonal is ignored.
// Throws NotRealizable when the angles do not bound a spherical simplex.
Classification classify_simplex(const std::vector<std::vector<Angle>>& angles);

}  // namespace sphfam
