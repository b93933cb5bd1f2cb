#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>

#include "sphfam/enumerate.hpp"
#include "sphfam/error.hpp"
#include "sphfam/graphbij.hpp"
#include "sphfam/identify.hpp"

using namespace sphfam;

namespace {

// Brute-force isomorphism classes: a labeled multigraph is packed as base-3
// edge multiplicities plus a mark bitmask, minimized over all relabelings.
struct Labeled {
  int n;
  std::vector<int> mult;  // upper triangle, row by row
  unsigned marks = 0;
};

int pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::uint64_t brute_canonical(const Labeled& g) {
  const int pairs = static_cast<int>(g.mult.size());
  std::vector<std::uint64_t> pow3(pairs + 1, 1);
  for (int k = 1; k <= pairs; ++k) pow3[k] = pow3[k - 1] * 3;
  std::vector<std::array<int, 3>> edges;  // i, j, multiplicity
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (int m = g.mult[pair_index(g.n, i, j)]) edges.push_back({i, j, m});
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~0ULL;
  do {
    std::uint64_t v = 0;
    for (const auto& e : edges) v += e[2] * pow3[pairs - 1 - pair_index(g.n, perm[e[0]], perm[e[1]])];
    unsigned marks = 0;
    for (int i = 0; i < g.n; ++i)
      if (g.marks >> i & 1) marks |= 1u << perm[i];
    best = std::min(best, (v << 16) | marks);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Labeled trees from Pruefer sequences.
std::vector<Labeled> labeled_trees(int n) {
  std::vector<Labeled> out;
  if (n == 1) return {Labeled{1, {}, 0}};
  const int len = n - 2;
  std::vector<int> seq(len, 0);
  for (;;) {
    Labeled t{n, std::vector<int>(n * (n - 1) / 2, 0), 0};
    std::vector<int> deg(n, 1);
    for (int x : seq) ++deg[x];
    for (int x : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      t.mult[pair_index(n, leaf, x)] = 1;
      --deg[leaf];
      --deg[x];
    }
    int u = -1;
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) {
        if (u < 0) {
          u = v;
        } else {
          t.mult[pair_index(n, u, v)] = 1;
        }
      }
    out.push_back(std::move(t));
    int k = 0;
    while (k < len && ++seq[k] == n) seq[k++] = 0;
    if (k == len) break;
  }
  return out;
}

std::size_t brute_tree_count(int n) {
  std::set<std::uint64_t> classes;
  for (const auto& t : labeled_trees(n)) classes.insert(brute_canonical(t));
  return classes.size();
}

std::size_t brute_marked_tree_count(int n) {
  std::set<std::uint64_t> classes;
  for (auto t : labeled_trees(n))
    for (int v = 0; v < n; ++v) {
      t.marks = 1u << v;
      classes.insert(brute_canonical(t));
    }
  return classes.size();
}

bool brute_connected(const Labeled& g) {
  std::vector<bool> seen(g.n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < g.n; ++w)
      if (w != v && !seen[w] && g.mult[pair_index(g.n, v, w)] > 0) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Connected loop-free multigraphs with n vertices, n edges, multiplicity <= 2.
std::size_t brute_unicyclic_count(int n) {
  const int pairs = n * (n - 1) / 2;
  std::set<std::uint64_t> classes;
  Labeled g{n, std::vector<int>(pairs, 0), 0};
  for (;;) {
    int k = 0;
    while (k < pairs && ++g.mult[k] == 3) g.mult[k++] = 0;
    if (k == pairs) break;
    if (std::accumulate(g.mult.begin(), g.mult.end(), 0) != n) continue;
    if (brute_connected(g)) classes.insert(brute_canonical(g));
  }
  return classes.size();
}

MultiGraph relabel(const MultiGraph& g, const std::vector<int>& perm) {
  MultiGraph h(g.n);
  for (auto [a, b] : g.edges) h.add_edge(perm[a], perm[b]);
  for (int m : g.marks) h.mark(perm[m]);
  return h;
}

MultiGraph diagram_graph(const FamilyDiagram& d) {
  MultiGraph g(d.n);
  for (int i = 0; i < d.n; ++i)
    for (int j = i + 1; j < d.n; ++j) {
      if (d.at(i, j) == EdgeClass::Orth) continue;
      g.add_edge(i, j);
      if (d.at(i, j) == EdgeClass::K4) g.add_edge(i, j);
    }
  return g;
}

MultiGraph path(int n) {
  MultiGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

MultiGraph star(int leaves) {
  MultiGraph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

MultiGraph cycle(int n) {
  MultiGraph g = path(n);
  g.add_edge(0, n - 1);
  return g;
}

std::size_t family_count(GroupKind kind) {
  EnumerateOptions o;
  o.mode = EnumerationMode::Direct;
  return enumerate_families(kind, o).families.size();
}

}  // namespace

TEST_CASE("graph enumeration matches brute-force isomorphism classes") {
  for (int n = 1; n <= 7; ++n) CHECK(enumerate_graphs(GraphClass::Tree, n).size() == brute_tree_count(n));
  for (int n = 1; n <= 5; ++n) CHECK(enumerate_graphs(GraphClass::MarkedTree, n).size() == brute_marked_tree_count(n));
  for (int n = 2; n <= 5; ++n) CHECK(enumerate_graphs(GraphClass::Unicyclic, n).size() == brute_unicyclic_count(n));
}

TEST_CASE("small graph counts") {
  CHECK(enumerate_graphs(GraphClass::Tree, 4).size() == 2);
  CHECK(enumerate_graphs(GraphClass::MarkedTree, 3).size() == 2);
  CHECK(enumerate_graphs(GraphClass::Unicyclic, 3).size() == 2);
  CHECK(enumerate_graphs(GraphClass::Tree, 7).size() == 11);
}

TEST_CASE("canonical strings ignore vertex labels") {
  std::mt19937 rng(7);
  for (auto cls : {GraphClass::Tree, GraphClass::MarkedTree, GraphClass::Unicyclic})
    for (int n = 2; n <= 6; ++n)
      for (const auto& g : enumerate_graphs(cls, n)) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int rep = 0; rep < 3; ++rep) {
          std::shuffle(perm.begin(), perm.end(), rng);
          CHECK(canonical_string(relabel(g, perm)) == canonical_string(g));
        }
      }
}

TEST_CASE("graph text round trip") {
  MultiGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.mark(3);
  CHECK(to_string(g) == "4: 0-1 0-1 1-2 2-3 *3");
  CHECK(parse_multigraph(to_string(g)) == g);
  CHECK_THROWS_AS(parse_multigraph("3: 0-0"), ParseError);
  CHECK_THROWS_AS(parse_multigraph("3 0-1"), ParseError);
  CHECK_THROWS_AS(parse_multigraph("2: 0-1 0-1 0-1"), ParseError);
}

TEST_CASE("loops never correspond to families") {
  MultiGraph g(3);
  CHECK_THROWS_AS(g.add_edge(1, 1), Error);
  // A loop at h_i would need the line of 2h_i, which is not a D root.
  const RootSpace& rs = root_space(GroupKind::D(4));
  Vector v(4);
  v[0] = 2;
  CHECK(rs.find_line(v) == -1);
}

TEST_CASE("graph and family maps") {
  SUBCASE("path on 3 vertices gives the A2 Coxeter family") {
    const Family f = graph_to_family(path(3), GraphClass::Tree);
    CHECK(f.ambient == GroupKind::A(2));
    CHECK(coxeter_type(f.line_ids, root_space(f.ambient)).to_string() == "A2");
    CHECK(canonical_code(diagram_of(f), CodeScheme::Binary).to_string() == "1");
  }
  SUBCASE("star K1,3 gives the triangle diagram") {
    const FamilyDiagram d = diagram_of(graph_to_family(star(3), GraphClass::Tree));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) CHECK(d.at(i, j) == EdgeClass::K3);
  }
  SUBCASE("double edge gives the orthogonal D pair") {
    MultiGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    const Family f = graph_to_family(g, GraphClass::Unicyclic);
    const RootSpace& rs = root_space(f.ambient);
    int orth_pairs_on_01 = 0;
    for (int a : f.line_ids)
      for (int b : f.line_ids) {
        const Vector& u = rs.line(a);
        const Vector& w = rs.line(b);
        if (a < b && !u[0].is_zero() && !u[1].is_zero() && !w[0].is_zero() && !w[1].is_zero()) {
          CHECK(rs.edge_class(a, b) == EdgeClass::Orth);
          ++orth_pairs_on_01;
        }
      }
    CHECK(orth_pairs_on_01 == 1);
  }
  SUBCASE("marked path read back from B3") {
    const RootSpace& rs = root_space(GroupKind::B(3));
    auto line = [&](std::initializer_list<std::pair<int, int>> e) {
      Vector v(3);
      for (auto [i, c] : e) v[i] = c;
      return rs.find_line(v);
    };
    std::vector<int> ids{line({{0, 1}}), line({{0, 1}, {1, -1}}), line({{1, 1}, {2, -1}})};
    std::sort(ids.begin(), ids.end());
    MultiGraph expect = path(3);
    expect.mark(0);
    CHECK(family_to_graph(make_family(GroupKind::B(3), ids)) == expect);
  }
  SUBCASE("round trips") {
    for (int n = 2; n <= 7; ++n)
      for (const auto& t : enumerate_graphs(GraphClass::Tree, n))
        CHECK(isomorphic(family_to_graph(graph_to_family(t, GraphClass::Tree)), t));
    for (int n = 2; n <= 6; ++n)
      for (const auto& t : enumerate_graphs(GraphClass::MarkedTree, n))
        CHECK(isomorphic(family_to_graph(graph_to_family(t, GraphClass::MarkedTree)), t));
    for (int n = 4; n <= 6; ++n)
      for (const auto& g : enumerate_graphs(GraphClass::Unicyclic, n))
        CHECK(isomorphic(family_to_graph(graph_to_family(g, GraphClass::Unicyclic)), g));
  }
  SUBCASE("families from graphs generate the full group") {
    for (int n = 2; n <= 6; ++n)
      for (const auto& t : enumerate_graphs(GraphClass::Tree, n))
        CHECK(generates_full_group(graph_to_family(t, GraphClass::Tree)));
    for (int n = 2; n <= 5; ++n)
      for (const auto& t : enumerate_graphs(GraphClass::MarkedTree, n))
        CHECK(generates_full_group(graph_to_family(t, GraphClass::MarkedTree)));
    for (int n = 4; n <= 6; ++n)
      for (const auto& g : enumerate_graphs(GraphClass::Unicyclic, n))
        CHECK(generates_full_group(graph_to_family(g, GraphClass::Unicyclic)));
  }
  CHECK_THROWS_AS(graph_to_family(cycle(3), GraphClass::Tree), Error);
  CHECK_THROWS_AS(graph_to_family(path(3), GraphClass::MarkedTree), Error);
  CHECK_THROWS_AS(family_to_graph(Family{GroupKind::E(6), {}}), UnsupportedKind);
}

TEST_CASE("bijection counts") {
  for (int n = 1; n <= 6; ++n) CHECK(enumerate_graphs(GraphClass::Tree, n + 1).size() == family_count(GroupKind::A(n)));
  for (int n = 2; n <= 5; ++n) CHECK(enumerate_graphs(GraphClass::MarkedTree, n).size() == family_count(GroupKind::B(n)));
  for (int n = 4; n <= 5; ++n) {
    const std::size_t excluded = n == 4 ? 2 : 0;
    CHECK(exceptional_pairs(n).size() == excluded);
    CHECK(enumerate_graphs(GraphClass::Unicyclic, n).size() - excluded == family_count(GroupKind::D(n)));
    CHECK(d_family_graphs(n).size() == family_count(GroupKind::D(n)));
  }
  CHECK(exceptional_pairs(6).empty());
}

TEST_CASE("exceptional unicyclic pairs") {
  const auto pairs = exceptional_pairs(4);
  REQUIRE(pairs.size() == 2);
  MultiGraph tri_tail = cycle(3);
  tri_tail.n = 4;
  tri_tail.add_edge(0, 3);
  std::set<std::string> without{canonical_string(pairs[0].second), canonical_string(pairs[1].second)};
  CHECK(without == std::set<std::string>{canonical_string(cycle(4)), canonical_string(tri_tail)});
  for (const auto& [with_double, no_double] : pairs) {
    // Both members give the same family; the map from graphs is two-to-one here.
    CHECK(family_key(graph_to_family(with_double, GraphClass::Unicyclic)) ==
          family_key(graph_to_family(no_double, GraphClass::Unicyclic)));
    DualGraph d = dual_graph(no_double, GraphClass::Unicyclic);
    CHECK(reconstruct(d, GraphClass::Unicyclic).size() == 1);
    d.undotted = true;
    CHECK(reconstruct(d, GraphClass::Unicyclic).size() == 2);
  }
}

TEST_CASE("duals are family diagrams") {
  for (int n = 2; n <= 7; ++n)
    for (const auto& t : enumerate_graphs(GraphClass::Tree, n))
      CHECK(isomorphic(dual_graph(t, GraphClass::Tree).graph, diagram_graph(diagram_of(graph_to_family(t, GraphClass::Tree)))));
  for (int n = 2; n <= 6; ++n)
    for (const auto& t : enumerate_graphs(GraphClass::MarkedTree, n))
      CHECK(isomorphic(dual_graph(t, GraphClass::MarkedTree).graph,
                       diagram_graph(diagram_of(graph_to_family(t, GraphClass::MarkedTree)))));
  for (int n = 4; n <= 6; ++n)
    for (const auto& g : enumerate_graphs(GraphClass::Unicyclic, n))
      CHECK(isomorphic(dual_graph(g, GraphClass::Unicyclic).graph,
                       diagram_graph(diagram_of(graph_to_family(g, GraphClass::Unicyclic)))));
}

TEST_CASE("dual examples") {
  CHECK(isomorphic(dual_graph(star(3), GraphClass::Tree).graph, cycle(3)));
  CHECK(isomorphic(dual_graph(path(4), GraphClass::Tree).graph, path(3)));
  MultiGraph marked = path(3);
  marked.mark(0);
  const DualGraph d = dual_graph(marked, GraphClass::MarkedTree);
  CHECK(d.graph.n == 3);
  CHECK(d.extra == 2);
  CHECK(d.graph.multiplicity(0, 1) == 1);
  CHECK(d.graph.multiplicity(0, 2) == 2);
  CHECK(d.graph.multiplicity(1, 2) == 0);
  const auto back = reconstruct(DualGraph{cycle(3), -1, std::nullopt}, GraphClass::Tree);
  REQUIRE(back.size() == 1);
  CHECK(isomorphic(back[0], star(3)));
}

TEST_CASE("reconstruction inverts the dual") {
  for (int n = 1; n <= 7; ++n)
    for (const auto& t : enumerate_graphs(GraphClass::Tree, n)) {
      const auto back = reconstruct(dual_graph(t, GraphClass::Tree), GraphClass::Tree);
      REQUIRE(back.size() == 1);
      CHECK(isomorphic(back[0], t));
    }
  for (int n = 1; n <= 6; ++n)
    for (const auto& t : enumerate_graphs(GraphClass::MarkedTree, n)) {
      const auto back = reconstruct(dual_graph(t, GraphClass::MarkedTree), GraphClass::MarkedTree);
      REQUIRE(back.size() == 1);
      CHECK(isomorphic(back[0], t));
    }
  std::set<std::string> exceptional;
  for (const auto& [a, b] : exceptional_pairs(4)) {
    exceptional.insert(canonical_string(a));
    exceptional.insert(canonical_string(b));
  }
  for (int n = 2; n <= 7; ++n)
    for (const auto& g : enumerate_graphs(GraphClass::Unicyclic, n)) {
      DualGraph d = dual_graph(g, GraphClass::Unicyclic);
      const auto back = reconstruct(d, GraphClass::Unicyclic);
      REQUIRE(back.size() == 1);
      CHECK(isomorphic(back[0], g));
      // Without the dotted edge only the exceptional pairs are ambiguous.
      d.dotted.reset();
      d.undotted = true;
      const auto undotted = reconstruct(d, GraphClass::Unicyclic);
      CHECK(undotted.size() == (exceptional.count(canonical_string(g)) ? 2u : 1u));
      CHECK(std::any_of(undotted.begin(), undotted.end(), [&](const MultiGraph& h) { return isomorphic(h, g); }));
    }
}

TEST_CASE("symmetric two-triangle necklace") {
  // Triangle 0-1-2 with pendant edges at 0 and 1: its dual has two triangles
  // sharing an edge, and either may serve as the string.
  MultiGraph g = cycle(3);
  g.n = 5;
  g.add_edge(0, 3);
  g.add_edge(1, 4);
  const auto back = reconstruct(dual_graph(g, GraphClass::Unicyclic), GraphClass::Unicyclic);
  REQUIRE(back.size() == 1);
  CHECK(isomorphic(back[0], g));
}

TEST_CASE("non-duals are rejected") {
  CHECK_THROWS_AS(reconstruct(DualGraph{cycle(4), -1, std::nullopt}, GraphClass::Tree), NotADual);
  MultiGraph two(2);
  CHECK_THROWS_AS(reconstruct(DualGraph{two, -1, std::nullopt}, GraphClass::Tree), NotADual);
  MultiGraph k4(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  k4.n = 5;
  k4.add_edge(3, 4);
  k4.add_edge(2, 4);
  CHECK_THROWS_AS(reconstruct(DualGraph{k4, -1, std::nullopt}, GraphClass::Tree), NotADual);
}

TEST_CASE("double dual removes leaves") {
  CHECK(double_dual_check(path(4)));
  CHECK(double_dual_check(star(3)));
  for (int n = 3; n <= 8; ++n)
    for (const auto& t : enumerate_graphs(GraphClass::Tree, n)) CHECK(double_dual_check(t));
  CHECK_THROWS_AS(double_dual_check(path(2)), Error);
}
