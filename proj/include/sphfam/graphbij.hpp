#pragma once

// Graphs behind the A, B and D families: trees, trees with one marked vertex,
// connected graphs with one cycle, and their duals.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sphfam/families.hpp"

namespace sphfam {

enum class GraphClass { Tree, MarkedTree, Unicyclic };

GraphClass parse_graph_class(std::string_view text);  // "A"/"tree", "B"/"marked", "D"/"unicyclic"
std::string_view to_string(GraphClass c);

/// Loop-free multigraph, edge multiplicity at most 2, optional vertex marks.
struct MultiGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted; a repeated pair is a double edge
  std::vector<int> marks;                  // sorted

  MultiGraph() = default;
  explicit MultiGraph(int vertices) : n(vertices) {}

  void add_edge(int i, int j);
  void mark(int v);
  bool marked(int v) const;
  int multiplicity(int i, int j) const;
  int degree(int v) const;  // counts multiplicity
  std::vector<int> neighbors(int v) const;  // distinct, ascending
  bool connected() const;
  int edge_count() const { return static_cast<int>(edges.size()); }

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;
};

// "n: i-j i-j ... *m": vertex count, edges, then marks.
std::string to_string(const MultiGraph& g);
MultiGraph parse_multigraph(std::string_view text);

// Isomorphism-invariant string. Trees use a center-rooted encoding, graphs
// with one cycle a rotation-minimized cycle encoding, anything else a
// canonical adjacency reading.
std::string canonical_string(const MultiGraph& g);
bool isomorphic(const MultiGraph& a, const MultiGraph& b);

// Every isomorphism class once, sorted by canonical string.
// Tree(n): n >= 1 vertices. MarkedTree(n): n >= 1. Unicyclic(n): n >= 2,
// double edges allowed as 2-cycles, no loops.
std::vector<MultiGraph> enumerate_graphs(GraphClass cls, int n);

// Tree on n vertices -> family in A(n-1); marked tree on n vertices -> B(n);
// unicyclic graph on n >= 4 vertices -> D(n).
Family graph_to_family(const MultiGraph& g, GraphClass cls);
// Supports of the lines: 2-supports give edges, 1-supports give marks.
MultiGraph family_to_graph(const Family& f);
GraphClass graph_class_of(GroupKind kind);

/// Dual graph. For trees this is the graph of maximal complete subgraphs.
/// B adds an extra vertex joined by double edges; D records a dotted edge
/// between the two halves of a double edge instead of a plain edge.
struct DualGraph {
  MultiGraph graph;
  int extra = -1;
  std::optional<std::pair<int, int>> dotted;
  // D only: the dotted edge, if any, was dropped (a family diagram). Such an
  // input may have two preimages.
  bool undotted = false;
};

// Graph whose vertices are the maximal complete subgraphs (multiplicities
// ignored), joined when they share a vertex. Vertices ordered by sorted
// member lists.
MultiGraph clique_dual(const MultiGraph& g);
DualGraph dual_graph(const MultiGraph& g, GraphClass cls);

// All graphs of the class whose dual is `dual`, up to isomorphism. Exact
// duals have one preimage; an `undotted` D input returns every graph whose
// dual minus the dotted edge matches. Throws NotADual when there is none.
std::vector<MultiGraph> reconstruct(const DualGraph& dual, GraphClass cls);

// dual(dual(t)) is isomorphic to t with its leaves removed.
bool double_dual_check(const MultiGraph& tree);

// Pairs (with 2-cycle, without) of unicyclic graphs on n vertices sharing the
// dual with dotted edge removed.
std::vector<std::pair<MultiGraph, MultiGraph>> exceptional_pairs(int n);
// Unicyclic graphs on n vertices minus the second member of every exceptional
// pair: these are in bijection with the families generating D(n).
std::vector<MultiGraph> d_family_graphs(int n);

// Isomorphism class of the graph of a family in A/B/D; distinguishes
// embeddings of one family that are not related by the Weyl group.
std::string embedding_key(const Family& f);

}  // namespace sphfam
