#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "sphfam/enumerate.hpp"
#include "sphfam/error.hpp"
#include "sphfam/subprop.hpp"

using namespace sphfam;

namespace {

using AngleMatrix = std::vector<std::vector<Angle>>;

AngleMatrix right_angles(int n) { return AngleMatrix(n, std::vector<Angle>(n, Angle(1, 2))); }

void put(AngleMatrix& a, int i, int j, Angle x) { a[i][j] = a[j][i] = x; }

AngleMatrix chain(std::initializer_list<int> orders) {
  AngleMatrix a = right_angles(static_cast<int>(orders.size()) + 1);
  int i = 0;
  for (int m : orders) {
    put(a, i, i + 1, Angle(1, m));
    ++i;
  }
  return a;
}

AngleMatrix triangle(Angle x, Angle y, Angle z) {
  AngleMatrix a = right_angles(3);
  put(a, 0, 1, x);
  put(a, 0, 2, y);
  put(a, 1, 2, z);
  return a;
}

std::vector<std::string> names(const std::vector<CoxeterType>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

// Cholesky in long double; 0 when a pivot is too close to zero to call.
int float_pd(const AngleMatrix& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<long double>> g(n, std::vector<long double>(n, 1));
  const long double pi = std::acos(-1.0L);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g[i][j] = -std::cos(pi * a[i][j].k / a[i][j].l);
  for (int k = 0; k < n; ++k) {
    if (std::fabs(g[k][k]) < 1e-9L) return 0;
    if (g[k][k] < 0) return -1;
    for (int i = k + 1; i < n; ++i) {
      const long double f = g[i][k] / g[k][k];
      for (int j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return 1;
}

AngleMatrix permuted(const AngleMatrix& a, const std::vector<int>& p) {
  const int n = static_cast<int>(a.size());
  AngleMatrix b = right_angles(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b[i][j] = a[p[i]][p[j]];
  return b;
}

}  // namespace

TEST_CASE("vertex profiles of Coxeter simplices") {
  CHECK(vertex_profile(labeled_from_angles(chain({5, 3, 3}))).to_string() == "{A3, A1xA2, G2(5)xA1, H3}");
  CHECK(vertex_profile(labeled_from_angles(chain({3, 3}))).to_string() == "{A2, A1xA1, A2}");
  CHECK(vertex_profile(labeled_from_angles(right_angles(3))).to_string() == "{A1xA1, A1xA1, A1xA1}");
  // The triangle with three angles pi/3 is Euclidean.
  AngleMatrix bad = chain({3, 3});
  put(bad, 0, 2, Angle(1, 3));
  CHECK_FALSE(realizable(labeled_from_angles(bad)));
}

TEST_CASE("family profiles agree with the abstract path") {
  for (const auto& k : {GroupKind::H(4), GroupKind::F4(), GroupKind::D(5), GroupKind::B(4)}) {
    for (const auto& f : enumerate_families(k).families) {
      CAPTURE(f.code.to_string());
      const VertexProfile p = vertex_profile(f.witness);
      CHECK(p == vertex_profile(labeled_diagram_of(f.witness)));
      for (const auto& t : p.types) CHECK(t->rank() == k.rank() - 1);
    }
  }
}

TEST_CASE("node-deleted Coxeter diagrams") {
  CHECK(names(coxeter_vertex_types(GroupKind::H(3))) == std::vector<std::string>{"A1xA1", "A2", "G2(5)"});
  CHECK(names(coxeter_vertex_types(GroupKind::H(4))) == std::vector<std::string>{"A1xA2", "A3", "G2(5)xA1", "H3"});
  CHECK(names(coxeter_vertex_types(GroupKind::F4())) == std::vector<std::string>{"A1xA2", "B3"});
  CHECK(names(coxeter_vertex_types(GroupKind::D(4))) == std::vector<std::string>{"A1xA1xA1", "A3"});
  for (int n = 2; n <= 7; ++n) {
    std::set<std::string> expect;
    for (int k = 0; k <= n - 1; ++k) {
      std::vector<GroupKind> parts;
      if (k > 0) parts.push_back(GroupKind::A(k));
      if (n - 1 - k > 0) parts.push_back(GroupKind::A(n - 1 - k));
      expect.insert(CoxeterType::of(parts).to_string());
    }
    CHECK(names(coxeter_vertex_types(GroupKind::A(n))) == std::vector<std::string>(expect.begin(), expect.end()));
  }
}

TEST_CASE("subgroup property examples") {
  const auto tri = labeled_from_angles(triangle(Angle(2, 5), Angle(1, 3), Angle(1, 3)));
  CHECK(satisfies_subgroup_property(vertex_profile(tri), GroupKind::H(3)));
  CHECK_FALSE(satisfies_subgroup_property(vertex_profile(tri), GroupKind::A(3)));

  VertexProfile seven;
  seven.types = {CoxeterType::dihedral(7), CoxeterType::dihedral(3), CoxeterType::dihedral(3)};
  for (const auto& k : {GroupKind::H(3), GroupKind::A(3), GroupKind::B(3)})
    CHECK_FALSE(satisfies_subgroup_property(seven, k));

  for (const auto& k : {GroupKind::A(5), GroupKind::B(4), GroupKind::D(5), GroupKind::E(6), GroupKind::F4(),
                        GroupKind::H(3), GroupKind::H(4)}) {
    CAPTURE(k.name());
    // Every family generating the group, Coxeter simplex included.
    for (const auto& f : enumerate_families(k).families)
      CHECK(satisfies_subgroup_property(vertex_profile(f.witness), k));
  }
}

TEST_CASE("exact realizability matches floating point away from the boundary") {
  const std::vector<Angle> h{Angle(1, 2), Angle(1, 3), Angle(2, 3), Angle(1, 5), Angle(4, 5), Angle(2, 5), Angle(3, 5)};
  const std::vector<Angle> b{Angle(1, 2), Angle(1, 3), Angle(2, 3), Angle(1, 4), Angle(3, 4)};
  for (const auto* alphabet : {&h, &b}) {
    const int L = static_cast<int>(alphabet->size());
    int disagreements = 0, checked = 0;
    for (int idx = 0; idx < L * L * L * L * L * L; ++idx) {
      AngleMatrix a = right_angles(4);
      int x = idx;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          put(a, i, j, (*alphabet)[x % L]);
          x /= L;
        }
      const int f = float_pd(a);
      if (f == 0) continue;
      ++checked;
      disagreements += realizable(labeled_from_angles(a)) != (f > 0);
    }
    CHECK(checked > 0);
    CHECK(disagreements == 0);
  }
}

TEST_CASE("dihedral rule") {
  CHECK(dihedral_discrete(1, 5));
  CHECK_FALSE(dihedral_discrete(2, 4));
  CHECK(dihedral_discrete(3, 7));
  CHECK_THROWS_AS(dihedral_discrete(0, 5), Error);
  CHECK_THROWS_AS(dihedral_discrete(5, 5), Error);
}

TEST_CASE("classify simplices") {
  CHECK(classify_simplex(chain({5, 3, 3})).to_string() == "Discrete(H4), code 97");
  CHECK(classify_simplex(triangle(Angle(2, 5), Angle(1, 3), Angle(1, 3))).to_string().rfind("Discrete(H3)", 0) == 0);
  CHECK(classify_simplex(triangle(Angle(2, 5), Angle(2, 5), Angle(2, 5))).to_string().rfind("Discrete(H3)", 0) == 0);
  CHECK(classify_simplex(chain({3, 4, 3})).type.to_string() == "F4");
  CHECK(classify_simplex(chain({3, 3, 3, 3, 3, 3, 3})).type.to_string() == "A8");

  // Blocks combine.
  AngleMatrix split = right_angles(4);
  put(split, 0, 1, Angle(2, 7));
  put(split, 2, 3, Angle(1, 3));
  const auto c = classify_simplex(split);
  CHECK(c.verdict == Classification::Verdict::Discrete);
  CHECK(c.type.to_string() == "G2(7)xA2");
  CHECK_FALSE(c.code.has_value());

  // 2pi/7 in a connected triangle, and mixed 4- and 5-angles.
  CHECK(classify_simplex(triangle(Angle(2, 7), Angle(1, 2), Angle(1, 3))).verdict ==
        Classification::Verdict::NonDiscrete);
  CHECK(classify_simplex(triangle(Angle(1, 4), Angle(1, 2), Angle(2, 5))).verdict ==
        Classification::Verdict::NonDiscrete);
  // The Euclidean triangle (pi/3, pi/3, pi/3) is not spherical.
  CHECK_THROWS_AS(classify_simplex(triangle(Angle(1, 3), Angle(1, 3), Angle(1, 3))), NotRealizable);
  CHECK_THROWS_AS(classify_simplex(triangle(Angle(1, 2), Angle(3, 4), Angle(3, 4))), NotRealizable);
  // Affine Coxeter diagrams have singular Gram matrices.
  CHECK_THROWS_AS(classify_simplex(chain({3, 6})), NotRealizable);
  CHECK_THROWS_AS(classify_simplex(chain({4, 3, 4})), NotRealizable);
  CHECK(classify_simplex(triangle(Angle(2, 5), Angle(2, 5), Angle(3, 5))).verdict ==
        Classification::Verdict::NonDiscrete);
}

TEST_CASE("classification ignores vertex order") {
  const std::vector<AngleMatrix> samples{chain({5, 3, 3}), chain({3, 4, 3}), chain({3, 3, 5}),
                                         triangle(Angle(1, 5), Angle(3, 5), Angle(1, 3))};
  for (const auto& a : samples) {
    const std::string base = classify_simplex(a).to_string();
    std::vector<int> p(a.size());
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) CHECK(classify_simplex(permuted(a, p)).to_string() == base);
  }
}

TEST_CASE("triangles with a fifth of pi agree with the H3 triangle list") {
  // Smallest-angle-sum representatives of the families generating H3.
  const std::vector<std::vector<Angle>> table{
      {Angle(1, 5), Angle(1, 5), Angle(2, 3)}, {Angle(1, 5), Angle(1, 5), Angle(4, 5)},
      {Angle(1, 5), Angle(2, 5), Angle(1, 2)}, {Angle(1, 5), Angle(3, 5), Angle(1, 3)},
      {Angle(1, 5), Angle(1, 3), Angle(1, 2)}, {Angle(1, 5), Angle(1, 3), Angle(2, 3)},
      {Angle(2, 5), Angle(2, 5), Angle(2, 5)}, {Angle(2, 5), Angle(1, 3), Angle(3, 5)},
      {Angle(2, 5), Angle(1, 3), Angle(1, 3)}, {Angle(2, 5), Angle(1, 3), Angle(1, 2)}};
  std::set<std::vector<Angle>> rows;
  for (auto r : table) {
    std::sort(r.begin(), r.end());
    rows.insert(r);
  }
  std::vector<Angle> grid;
  for (int l = 2; l <= 5; ++l)
    for (int k = 1; k < l; ++k)
      if (std::gcd(k, l) == 1) grid.emplace_back(k, l);
  int h3 = 0;
  for (const auto& x : grid)
    for (const auto& y : grid)
      for (const auto& z : grid) {
        const AngleMatrix a = triangle(x, y, z);
        Classification c;
        try {
          c = classify_simplex(a);
        } catch (const NotRealizable&) {
          CHECK(float_pd(a) <= 0);
          continue;
        }
        const bool is_h3 = c.verdict == Classification::Verdict::Discrete && c.type.to_string() == "H3";
        const bool five = x.l == 5 || y.l == 5 || z.l == 5;
        const bool connected = (x.l != 2) + (y.l != 2) + (z.l != 2) >= 2;
        if (five && connected && x.l != 4 && y.l != 4 && z.l != 4) {
          CHECK(is_h3 == (rows.count(min_angle_sum_representative(labeled_from_angles(a))) == 1));
          // Discrete triangles have discrete dihedral vertex groups; the angle
          // grid is reduced, so every pair passes the rule.
          if (is_h3)
            for (const auto& t : {x, y, z}) CHECK(dihedral_discrete(t.k, t.l));
        }
        h3 += is_h3;
      }
  CHECK(h3 > 0);
}

TEST_CASE("subgroup sweep on F4") {
  const auto r = theorem_subgr_equivalence(GroupKind::F4());
  CHECK(r.assignments == 15625);
  CHECK(r.holds());
  CHECK(r.with_property == r.from_families);
  CHECK(r.from_families > 0);
  // Proper subgroups such as B4 fail the property for F4.
  CHECK(r.subgroup_reading_mismatches > 0);
}

TEST_CASE("subgroup sweep mismatches generate a different group") {
  // A simplex generating D4 can have every vertex group of type A3, which is
  // also the vertex type of A4; the A4 and D4 sweeps therefore see each
  // other's simplices.
  struct Case {
    GroupKind kind;
    std::set<std::string> others;
  };
  const std::vector<Case> cases{{GroupKind::A(4), {"D4"}}, {GroupKind::D(4), {"A4"}}, {GroupKind::A(5), {"D5"}}};
  for (const auto& c : cases) {
    CAPTURE(c.kind.name());
    SubgroupSweepOptions o;
    o.max_examples = 100000;
    const auto r = theorem_subgr_equivalence(c.kind, o);
    CHECK(r.counterexamples > 0);
    REQUIRE(r.examples.size() == r.counterexamples);
    for (const auto& e : r.examples) {
      CHECK(realizable(e));
      CHECK(satisfies_subgroup_property(vertex_profile(e), c.kind));
      AngleMatrix a = right_angles(e.n());
      for (int i = 0; i < e.n(); ++i)
        for (int j = i + 1; j < e.n(); ++j) put(a, i, j, e.angle(i, j));
      const auto cls = classify_simplex(a);
      CHECK(cls.verdict == Classification::Verdict::Discrete);
      CHECK(c.others.count(cls.type.to_string()) == 1);
    }
  }
}

TEST_CASE("serial and parallel sweeps agree") {
  SubgroupSweepOptions serial;
  serial.jobs = 1;
  SubgroupSweepOptions parallel;
  parallel.jobs = 3;
  const auto a = theorem_subgr_equivalence(GroupKind::B(4), serial);
  const auto b = theorem_subgr_equivalence(GroupKind::B(4), parallel);
  CHECK(a.realizable == b.realizable);
  CHECK(a.with_property == b.with_property);
  CHECK(a.counterexamples == b.counterexamples);
  CHECK(a.examples == b.examples);
  CHECK(a.subgroup_reading_examples == b.subgroup_reading_examples);
}

TEST_CASE("sweep guard") {
  CHECK_THROWS_AS(theorem_subgr_equivalence(GroupKind::B(6)), GuardRailError);
  CHECK_THROWS_AS(theorem_subgr_equivalence(GroupKind::E(7)), GuardRailError);
  CHECK_THROWS_AS(theorem_subgr_equivalence(GroupKind::H(4)), UnsupportedKind);
  CHECK_THROWS_AS(theorem_subgr_equivalence(GroupKind::B(3)), UnsupportedKind);
}

TEST_CASE("tetrahedra with a fifth of pi") {
  const Prop5Report r = prop5_report();
  CHECK(r.assignments == 117649);

  std::set<std::string> h4;
  for (const auto& f : enumerate_families(GroupKind::H(4)).families) h4.insert(f.code.to_string());
  for (const auto& d : r.excluded) {
    CHECK(std::any_of(d.edge.begin(), d.edge.end(),
                      [](EdgeClass e) { return e == EdgeClass::K5 || e == EdgeClass::K5p; }));
    CHECK(h4.count(canonical_code(d, CodeScheme::Base4).to_string()) == 0);
  }
  // The only shared diagrams are the two 4-cycles carrying two families.
  std::vector<std::string> shared;
  for (const auto& d : r.shared_with_h4) shared.push_back(canonical_code(d, CodeScheme::Base4).to_string());
  CHECK(shared == std::vector<std::string>{"348", "500"});

  // Independent pass over the same tetrahedra through the rational-field path.
  const std::vector<Angle> alphabet{Angle(1, 2), Angle(1, 3), Angle(2, 3), Angle(1, 5),
                                    Angle(4, 5), Angle(2, 5), Angle(3, 5)};
  std::map<std::string, bool> memo_prop, memo_inf;
  std::set<std::string> codes;
  std::uint64_t real = 0;
  for (int idx = 0; idx < 117649; ++idx) {
    AngleMatrix a = right_angles(4);
    int x = idx;
    bool five = false;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        put(a, i, j, alphabet[x % 7]);
        five = five || alphabet[x % 7].l == 5;
        x /= 7;
      }
    if (!five) continue;
    const LabeledDiagram d = labeled_from_angles(a);
    if (!realizable(d)) continue;
    ++real;
    const std::string key = family_key(d);
    if (!memo_prop.count(key)) memo_prop[key] = satisfies_subgroup_property(vertex_profile(d), GroupKind::H(4));
    if (!memo_prop[key]) continue;
    if (!memo_inf.count(key)) memo_inf[key] = classify_simplex(a).verdict == Classification::Verdict::NonDiscrete;
    if (memo_inf[key]) codes.insert(canonical_code(d.diagram, CodeScheme::Base4).to_string());
  }
  CHECK(real == r.realizable);
  std::set<std::string> got;
  for (const auto& d : r.excluded) got.insert(canonical_code(d, CodeScheme::Base4).to_string());
  for (const auto& d : r.shared_with_h4) got.insert(canonical_code(d, CodeScheme::Base4).to_string());
  CHECK(got == codes);
  CHECK(r.excluded.size() + r.shared_with_h4.size() == codes.size());
}
