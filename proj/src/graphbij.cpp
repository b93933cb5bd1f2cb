#include "sphfam/graphbij.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "sphfam/error.hpp"

namespace sphfam {

GraphClass parse_graph_class(std::string_view text) {
  if (text == "A" || text == "tree") return GraphClass::Tree;
  if (text == "B" || text == "marked") return GraphClass::MarkedTree;
  if (text == "D" || text == "unicyclic") return GraphClass::Unicyclic;
  throw ParseError("unknown graph class '" + std::string(text) + "' (expected A, B or D)");
}

std::string_view to_string(GraphClass c) {
  switch (c) {
    case GraphClass::Tree: return "tree";
    case GraphClass::MarkedTree: return "marked tree";
    case GraphClass::Unicyclic: return "unicyclic";
  }
  return "?";
}

void MultiGraph::add_edge(int i, int j) {
  if (i == j) throw Error("loops are not allowed");
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error("edge endpoint out of range");
  if (i > j) std::swap(i, j);
  if (multiplicity(i, j) >= 2) throw Error("edge multiplicity above 2");
  edges.insert(std::upper_bound(edges.begin(), edges.end(), std::make_pair(i, j)), {i, j});
}

void MultiGraph::mark(int v) {
  if (v < 0 || v >= n) throw Error("mark out of range");
  if (!marked(v)) marks.insert(std::upper_bound(marks.begin(), marks.end(), v), v);
}

bool MultiGraph::marked(int v) const { return std::binary_search(marks.begin(), marks.end(), v); }

int MultiGraph::multiplicity(int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto [lo, hi] = std::equal_range(edges.begin(), edges.end(), std::make_pair(i, j));
  return static_cast<int>(hi - lo);
}

int MultiGraph::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

std::vector<int> MultiGraph::neighbors(int v) const {
  std::vector<int> out;
  for (auto [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool MultiGraph::connected() const {
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : neighbors(v))
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

std::string to_string(const MultiGraph& g) {
  std::string s = std::to_string(g.n) + ":";
  for (auto [a, b] : g.edges) s += " " + std::to_string(a) + "-" + std::to_string(b);
  for (int m : g.marks) s += " *" + std::to_string(m);
  return s;
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 0)
    throw ParseError("malformed graph '" + std::string(whole) + "'");
  return v;
}

}  // namespace

MultiGraph parse_multigraph(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("graph needs 'n:' prefix");
  std::string_view head = text.substr(0, colon);
  while (!head.empty() && head.front() == ' ') head.remove_prefix(1);
  while (!head.empty() && head.back() == ' ') head.remove_suffix(1);
  MultiGraph g(parse_int(head, text));
  std::istringstream in{std::string(text.substr(colon + 1))};
  std::string tok;
  try {
    while (in >> tok) {
      if (tok[0] == '*') {
        g.mark(parse_int(std::string_view(tok).substr(1), text));
        continue;
      }
      const auto dash = tok.find('-');
      if (dash == std::string::npos) throw ParseError("malformed edge '" + tok + "'");
      g.add_edge(parse_int(std::string_view(tok).substr(0, dash), text),
                 parse_int(std::string_view(tok).substr(dash + 1), text));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return g;
}

// ---------------------------------------------------------------- canonical forms

namespace {

using Adjacency = std::vector<std::vector<int>>;  // with repetition for double edges

Adjacency adjacency(const MultiGraph& g) {
  Adjacency adj(g.n);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Rooted encoding; vertices in `blocked` are not entered.
std::string rooted_code(const MultiGraph& g, const Adjacency& adj, int v, int parent, const std::vector<bool>& blocked) {
  std::vector<std::string> kids;
  for (int w : adj[v])
    if (w != parent && !blocked[w]) kids.push_back(rooted_code(g, adj, w, v, blocked));
  std::sort(kids.begin(), kids.end());
  std::string s = g.marked(v) ? "(*" : "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

// Vertices left after repeatedly deleting degree-1 vertices.
std::vector<bool> strip_leaves(const MultiGraph& g, const Adjacency& adj, bool keep_two) {
  std::vector<int> deg(g.n);
  for (int v = 0; v < g.n; ++v) deg[v] = static_cast<int>(adj[v].size());
  std::vector<bool> alive(g.n, true);
  int left = g.n;
  std::vector<int> layer;
  for (int v = 0; v < g.n; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  while (!layer.empty()) {
    // Trees stop at one or two centers.
    if (keep_two && left - static_cast<int>(layer.size()) < 1) break;
    std::vector<int> next;
    for (int v : layer) {
      alive[v] = false;
      --left;
    }
    for (int v : layer)
      for (int w : adj[v])
        if (alive[w] && --deg[w] == 1) next.push_back(w);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
  return alive;
}

std::string tree_code(const MultiGraph& g) {
  if (g.n == 1) return g.marked(0) ? "T(*)" : "T()";
  const Adjacency adj = adjacency(g);
  const std::vector<bool> centers = strip_leaves(g, adj, true);
  std::vector<int> c;
  for (int v = 0; v < g.n; ++v)
    if (centers[v]) c.push_back(v);
  const std::vector<bool> none(g.n, false);
  if (c.size() == 1) return "T" + rooted_code(g, adj, c[0], -1, none);
  std::string a = rooted_code(g, adj, c[0], c[1], none);
  std::string b = rooted_code(g, adj, c[1], c[0], none);
  if (b < a) std::swap(a, b);
  return "T[" + a + b + "]";
}

std::string unicyclic_code(const MultiGraph& g) {
  const Adjacency adj = adjacency(g);
  const std::vector<bool> on_cycle = strip_leaves(g, adj, false);
  std::vector<int> cycle;
  int start = 0;
  while (!on_cycle[start]) ++start;
  cycle.push_back(start);
  int prev = -1;
  int cur = start;
  for (;;) {
    int next = -1;
    for (int w : adj[cur])
      if (on_cycle[w] && w != prev) {
        next = w;
        break;
      }
    if (next == start || next < 0) break;
    // A 2-cycle closes immediately.
    if (g.multiplicity(cur, next) == 2 && cycle.size() == 1) {
      cycle.push_back(next);
      break;
    }
    cycle.push_back(next);
    prev = cur;
    cur = next;
  }
  std::vector<std::string> parts;
  for (int v : cycle) parts.push_back(rooted_code(g, adj, v, -1, on_cycle));
  const int L = static_cast<int>(parts.size());
  std::string best;
  for (int dir = 0; dir < 2; ++dir) {
    for (int r = 0; r < L; ++r) {
      std::string s;
      for (int i = 0; i < L; ++i) {
        const int k = dir == 0 ? (r + i) % L : ((r - i) % L + L) % L;
        s += parts[k];
        s += ',';
      }
      if (best.empty() || s < best) best = s;
    }
  }
  return "U" + std::to_string(L) + ":" + best;
}

std::string generic_code(const MultiGraph& g) {
  const bool apex = !g.marks.empty();
  const int size = g.n + (apex ? 1 : 0);
  if (size > kMaxVertices) throw Error("graph too large for canonical labeling");
  DigitMatrix m(size);
  for (auto [a, b] : g.edges) m.set(a, b, static_cast<std::uint8_t>(g.multiplicity(a, b)));
  if (apex)
    for (int v = 0; v < g.n; ++v) m.set(v, g.n, g.marked(v) ? 7 : 6);
  std::string s = "G" + std::to_string(g.n) + (apex ? "m:" : ":");
  for (auto d : canonical_form(m).digits) s.push_back(static_cast<char>('0' + d));
  return s;
}

}  // namespace

std::string canonical_string(const MultiGraph& g) {
  if (g.n == 0) return "G0:";
  if (g.connected()) {
    if (g.edge_count() == g.n - 1) return tree_code(g);
    if (g.edge_count() == g.n) return unicyclic_code(g);
  }
  return generic_code(g);
}

bool isomorphic(const MultiGraph& a, const MultiGraph& b) { return canonical_string(a) == canonical_string(b); }

// ---------------------------------------------------------------- enumeration

namespace {

std::vector<MultiGraph> sorted_classes(const std::map<std::string, MultiGraph>& m) {
  std::vector<MultiGraph> out;
  out.reserve(m.size());
  for (const auto& [k, g] : m) out.push_back(g);
  return out;
}

std::vector<MultiGraph> trees(int n) {
  std::map<std::string, MultiGraph> level;
  level.emplace(canonical_string(MultiGraph(1)), MultiGraph(1));
  for (int k = 1; k < n; ++k) {
    std::map<std::string, MultiGraph> next;
    for (const auto& [key, t] : level)
      for (int v = 0; v < k; ++v) {
        MultiGraph g = t;
        g.n = k + 1;
        g.add_edge(v, k);
        next.emplace(canonical_string(g), std::move(g));
      }
    level = std::move(next);
  }
  return sorted_classes(level);
}

}  // namespace

std::vector<MultiGraph> enumerate_graphs(GraphClass cls, int n) {
  if (n < 1 || (cls == GraphClass::Unicyclic && n < 2)) throw Error("graph size out of range");
  if (n > kMaxVertices - 1) throw GuardRailError("graph enumeration above " + std::to_string(kMaxVertices - 1) + " vertices");
  if (cls == GraphClass::Tree) return trees(n);
  std::map<std::string, MultiGraph> out;
  for (const auto& t : trees(n)) {
    if (cls == GraphClass::MarkedTree) {
      for (int v = 0; v < n; ++v) {
        MultiGraph g = t;
        g.mark(v);
        out.emplace(canonical_string(g), std::move(g));
      }
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          MultiGraph g = t;
          g.add_edge(i, j);
          out.emplace(canonical_string(g), std::move(g));
        }
    }
  }
  return sorted_classes(out);
}

// ---------------------------------------------------------------- graphs and families

namespace {

int coordinate_line(const RootSpace& rs, int i, int si, int j, int sj) {
  Vector v(rs.ambient_dim());
  v[i] = si;
  if (j >= 0) v[j] = sj;
  const int id = rs.find_line(v);
  if (id < 0) throw Error("coordinate vector is not a root of " + rs.kind().name());
  return id;
}

bool is_tree(const MultiGraph& g) { return g.connected() && g.edge_count() == g.n - 1; }
bool is_unicyclic(const MultiGraph& g) { return g.connected() && g.edge_count() == g.n; }

}  // namespace

GraphClass graph_class_of(GroupKind kind) {
  switch (kind.tag) {
    case KindTag::A: return GraphClass::Tree;
    case KindTag::B: return GraphClass::MarkedTree;
    case KindTag::D: return GraphClass::Unicyclic;
    default: break;
  }
  throw UnsupportedKind(kind.name() + " has no graph description");
}

Family graph_to_family(const MultiGraph& g, GraphClass cls) {
  std::vector<int> ids;
  GroupKind kind;
  switch (cls) {
    case GraphClass::Tree: {
      if (g.n < 2 || !is_tree(g) || !g.marks.empty()) throw Error("expected an unmarked tree with at least 2 vertices");
      kind = GroupKind::A(g.n - 1);
      const RootSpace& rs = root_space(kind);
      for (auto [a, b] : g.edges) ids.push_back(coordinate_line(rs, a, 1, b, -1));
      break;
    }
    case GraphClass::MarkedTree: {
      if (g.n < 2 || !is_tree(g) || g.marks.size() != 1) throw Error("expected a tree with exactly one marked vertex");
      kind = GroupKind::B(g.n);
      const RootSpace& rs = root_space(kind);
      for (auto [a, b] : g.edges) ids.push_back(coordinate_line(rs, a, 1, b, -1));
      ids.push_back(coordinate_line(rs, g.marks[0], 1, -1, 0));
      break;
    }
    case GraphClass::Unicyclic: {
      if (g.n < 4 || !is_unicyclic(g) || !g.marks.empty())
        throw Error("expected an unmarked connected graph with one cycle and at least 4 vertices");
      kind = GroupKind::D(g.n);
      const RootSpace& rs = root_space(kind);
      const std::vector<bool> on_cycle = strip_leaves(g, adjacency(g), false);
      // The first cycle edge in edge order carries the sum-type root.
      bool placed = false;
      for (auto [a, b] : g.edges) {
        const bool sum = !placed && on_cycle[a] && on_cycle[b];
        placed = placed || sum;
        ids.push_back(coordinate_line(rs, a, 1, b, sum ? 1 : -1));
      }
      break;
    }
  }
  std::sort(ids.begin(), ids.end());
  return make_family(kind, std::move(ids));
}

MultiGraph family_to_graph(const Family& f) {
  const GraphClass cls = graph_class_of(f.ambient);
  (void)cls;
  const RootSpace& rs = root_space(f.ambient);
  MultiGraph g(rs.ambient_dim());
  for (int id : f.line_ids) {
    std::vector<int> support;
    const Vector& v = rs.line(id);
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
      if (!v[i].is_zero()) support.push_back(i);
    if (support.size() == 2) {
      g.add_edge(support[0], support[1]);
    } else if (support.size() == 1) {
      g.mark(support[0]);
    } else {
      throw Error("line " + to_string(v) + " is not of coordinate shape");
    }
  }
  return g;
}

std::string embedding_key(const Family& f) { return canonical_string(family_to_graph(f)); }

// ---------------------------------------------------------------- duals

namespace {

using Clique = std::vector<int>;

void bron_kerbosch(const std::vector<std::vector<bool>>& adj, Clique& r, std::vector<int> p, std::vector<int> x,
                   std::vector<Clique>& out) {
  if (p.empty() && x.empty()) {
    Clique c = r;
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
    return;
  }
  while (!p.empty()) {
    const int v = p.front();
    std::vector<int> np, nx;
    for (int w : p)
      if (adj[v][w]) np.push_back(w);
    for (int w : x)
      if (adj[v][w]) nx.push_back(w);
    r.push_back(v);
    bron_kerbosch(adj, r, np, nx, out);
    r.pop_back();
    p.erase(p.begin());
    x.push_back(v);
  }
}

std::vector<Clique> maximal_cliques(const MultiGraph& g) {
  std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
  for (auto [a, b] : g.edges) adj[a][b] = adj[b][a] = true;
  std::vector<int> all(g.n);
  for (int i = 0; i < g.n; ++i) all[i] = i;
  std::vector<Clique> out;
  Clique r;
  bron_kerbosch(adj, r, all, {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool intersects(const Clique& a, const Clique& b) {
  for (int x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return true;
  return false;
}

bool contains(const Clique& c, int x) { return std::binary_search(c.begin(), c.end(), x); }

MultiGraph line_graph(const MultiGraph& g) {
  const int m = g.edge_count();
  MultiGraph d(m);
  for (int e = 0; e < m; ++e)
    for (int f = e + 1; f < m; ++f) {
      const auto [a, b] = g.edges[e];
      const auto [c, dd] = g.edges[f];
      if (a == c && b == dd) continue;  // parallel pair
      if (a == c || a == dd || b == c || b == dd) d.add_edge(e, f);
    }
  return d;
}

// Dual with the extra vertex marked and the dotted edge doubled, so duals
// compare by canonical string.
MultiGraph dual_as_graph(const DualGraph& d) {
  MultiGraph g = d.graph;
  if (d.extra >= 0) g.mark(d.extra);
  if (d.dotted) {
    g.add_edge(d.dotted->first, d.dotted->second);
    g.add_edge(d.dotted->first, d.dotted->second);
  }
  return g;
}

// The graph from vertex cliques: each dual vertex becomes an edge between
// the two cliques containing it, or a pendant edge when only one does. The
// dotted pair, if both halves are pendant at the same clique, shares its leaf.
std::optional<MultiGraph> assemble(int m, const std::vector<Clique>& cliques, std::optional<std::pair<int, int>> dotted) {
  std::vector<std::vector<int>> where(m);
  for (int c = 0; c < static_cast<int>(cliques.size()); ++c)
    for (int x : cliques[c]) {
      if (x < 0 || x >= m) return std::nullopt;
      where[x].push_back(c);
    }
  int nodes = static_cast<int>(cliques.size());
  std::vector<std::pair<int, int>> edges;
  int shared_leaf = -1;
  for (int x = 0; x < m; ++x) {
    if (where[x].empty() || where[x].size() > 2) return std::nullopt;
    if (where[x].size() == 2) {
      if (where[x][0] == where[x][1]) return std::nullopt;
      edges.emplace_back(where[x][0], where[x][1]);
      continue;
    }
    const bool dotted_half = dotted && (x == dotted->first || x == dotted->second);
    if (dotted_half) {
      if (shared_leaf < 0) shared_leaf = nodes++;
      edges.emplace_back(where[x][0], shared_leaf);
    } else {
      edges.emplace_back(where[x][0], nodes++);
    }
  }
  if (nodes > kMaxVertices) return std::nullopt;
  MultiGraph g(nodes);
  try {
    for (auto [a, b] : edges) g.add_edge(a, b);
  } catch (const Error&) {
    return std::nullopt;
  }
  return g;
}

// Keeps `g` if its class and dual match; the dual is compared with or
// without the dotted edge.
void accept_if_matches(const std::optional<MultiGraph>& g, GraphClass cls, const MultiGraph& target, bool drop_dotted,
                       std::map<std::string, MultiGraph>& out) {
  if (!g) return;
  const bool shape_ok = cls == GraphClass::Unicyclic ? is_unicyclic(*g) : is_tree(*g);
  if (!shape_ok) return;
  if (cls == GraphClass::MarkedTree && g->marks.size() != 1) return;
  DualGraph d = dual_graph(*g, cls);
  if (drop_dotted) d.dotted.reset();
  if (canonical_string(dual_as_graph(d)) != canonical_string(target)) return;
  out.emplace(canonical_string(*g), *g);
}

std::vector<MultiGraph> finish(std::map<std::string, MultiGraph>&& found) {
  if (found.empty()) throw NotADual("input is not the dual of any graph of the requested class");
  return sorted_classes(found);
}

// Cactus rule for trees: each maximal clique is a vertex.
std::optional<MultiGraph> tree_from_cactus(const MultiGraph& cactus) {
  if (cactus.n == 0) return MultiGraph(1);
  if (!cactus.connected()) return std::nullopt;
  return assemble(cactus.n, maximal_cliques(cactus), std::nullopt);
}

// Triangles that can be the string of a necklace: every edge lying in two
// maximal cliques is on it, and every other clique meeting it meets it in
// exactly two vertices.
bool plausible_string(const Clique& tri, const std::vector<Clique>& cliques) {
  for (const auto& c : cliques) {
    if (c == tri) continue;
    int common = 0;
    for (int x : c) common += contains(tri, x);
    if (common != 0 && common != 2) return false;
  }
  for (std::size_t a = 0; a < cliques.size(); ++a)
    for (std::size_t b = a + 1; b < cliques.size(); ++b) {
      Clique both;
      std::set_intersection(cliques[a].begin(), cliques[a].end(), cliques[b].begin(), cliques[b].end(),
                            std::back_inserter(both));
      if (both.size() >= 2)
        for (int x : both)
          if (!contains(tri, x)) return false;
    }
  return true;
}

std::optional<MultiGraph> necklace_with_dotted(const MultiGraph& solid, std::pair<int, int> dotted) {
  MultiGraph h = solid;
  if (h.multiplicity(dotted.first, dotted.second) != 0) return std::nullopt;
  h.add_edge(dotted.first, dotted.second);
  std::vector<Clique> cliques = maximal_cliques(h);
  const Clique pair{std::min(dotted.first, dotted.second), std::max(dotted.first, dotted.second)};
  int holding = 0;
  for (const auto& c : cliques) holding += contains(c, pair[0]) && contains(c, pair[1]);
  // Both ends of the double edge hold the pair; add the ends that have no other edges.
  for (; holding < 2; ++holding) cliques.push_back(pair);
  return assemble(h.n, cliques, dotted);
}

}  // namespace

MultiGraph clique_dual(const MultiGraph& g) {
  const std::vector<Clique> cliques = maximal_cliques(g);
  MultiGraph d(static_cast<int>(cliques.size()));
  for (int a = 0; a < d.n; ++a)
    for (int b = a + 1; b < d.n; ++b)
      if (intersects(cliques[a], cliques[b])) d.add_edge(a, b);
  return d;
}

DualGraph dual_graph(const MultiGraph& g, GraphClass cls) {
  DualGraph d;
  switch (cls) {
    case GraphClass::Tree:
      d.graph = g.n <= 1 ? MultiGraph(0) : clique_dual(g);
      break;
    case GraphClass::MarkedTree: {
      if (g.marks.size() != 1) throw Error("marked tree needs exactly one mark");
      const int m = g.edge_count();
      d.graph = line_graph(g);
      d.graph.n = m + 1;
      d.extra = m;
      for (int e = 0; e < m; ++e)
        if (g.edges[e].first == g.marks[0] || g.edges[e].second == g.marks[0]) {
          d.graph.add_edge(e, m);
          d.graph.add_edge(e, m);
        }
      break;
    }
    case GraphClass::Unicyclic: {
      d.graph = line_graph(g);
      for (int e = 0; e + 1 < g.edge_count(); ++e)
        if (g.edges[e] == g.edges[e + 1]) d.dotted = std::make_pair(e, e + 1);
      break;
    }
  }
  return d;
}

std::vector<MultiGraph> reconstruct(const DualGraph& dual, GraphClass cls) {
  std::map<std::string, MultiGraph> found;
  const MultiGraph target = dual_as_graph(dual);
  switch (cls) {
    case GraphClass::Tree: {
      if (!dual.graph.marks.empty() || dual.dotted || dual.extra >= 0) throw NotADual("tree duals carry no decorations");
      for (auto [a, b] : dual.graph.edges)
        if (dual.graph.multiplicity(a, b) > 1) throw NotADual("tree duals have no double edges");
      accept_if_matches(tree_from_cactus(dual.graph), cls, target, false, found);
      break;
    }
    case GraphClass::MarkedTree: {
      int extra = dual.extra;
      if (extra < 0) {
        // The extra vertex is the endpoint common to all double edges.
        std::map<int, int> hits;
        int doubles = 0;
        for (std::size_t e = 0; e < dual.graph.edges.size(); ++e) {
          const auto [a, b] = dual.graph.edges[e];
          if (e + 1 < dual.graph.edges.size() && dual.graph.edges[e + 1] == dual.graph.edges[e]) {
            ++hits[a];
            ++hits[b];
            ++doubles;
          }
        }
        extra = -1;
        for (auto [v, c] : hits)
          if (c == doubles && dual.graph.degree(v) == 2 * doubles && extra < 0) extra = v;
        if (extra < 0 && dual.graph.n == 1) extra = 0;
      }
      if (extra < 0) throw NotADual("no extra vertex in a marked-tree dual");
      // Remove the extra vertex, rebuild the tree, then place the mark.
      std::vector<int> relabel(dual.graph.n, -1);
      int k = 0;
      for (int v = 0; v < dual.graph.n; ++v)
        if (v != extra) relabel[v] = k++;
      MultiGraph rest(k);
      std::vector<int> joined;
      for (auto [a, b] : dual.graph.edges) {
        if (a == extra || b == extra) {
          joined.push_back(relabel[a == extra ? b : a]);
          continue;
        }
        if (rest.multiplicity(relabel[a], relabel[b]) == 0) rest.add_edge(relabel[a], relabel[b]);
      }
      std::sort(joined.begin(), joined.end());
      joined.erase(std::unique(joined.begin(), joined.end()), joined.end());
      if (k == 0) {
        MultiGraph g(1);
        g.mark(0);
        found.emplace(canonical_string(g), g);
        break;
      }
      if (!rest.connected()) throw NotADual("marked-tree dual is disconnected");
      const std::vector<Clique> cliques = maximal_cliques(rest);
      auto tree = assemble(k, cliques, std::nullopt);
      if (!tree) break;
      // The marked vertex has as many edges as the extra vertex has neighbors;
      // the dual check picks the right one.
      for (int v = 0; v < tree->n; ++v) {
        std::vector<int> incident;
        for (int e = 0; e < tree->edge_count(); ++e) {
          const auto [a, b] = tree->edges[e];
          if (a == v || b == v) incident.push_back(e);
        }
        if (incident.size() != joined.size()) continue;
        MultiGraph g = *tree;
        g.mark(v);
        accept_if_matches(g, cls, target, false, found);
      }
      break;
    }
    case GraphClass::Unicyclic: {
      for (auto [a, b] : dual.graph.edges)
        if (dual.graph.multiplicity(a, b) > 1) throw NotADual("necklace edges are simple");
      if (dual.dotted) {
        if (dual.undotted) throw NotADual("undotted input carries a dotted edge");
        accept_if_matches(necklace_with_dotted(dual.graph, *dual.dotted), cls, target, false, found);
        break;
      }
      const std::vector<Clique> cliques = maximal_cliques(dual.graph);
      // String with at least four vertices: every maximal clique is a vertex.
      accept_if_matches(assemble(dual.graph.n, cliques, std::nullopt), cls, target, false, found);
      // String is a triangle: no vertex for it.
      for (const auto& tri : cliques) {
        if (tri.size() != 3 || !plausible_string(tri, cliques)) continue;
        std::vector<Clique> vertex_cliques;
        for (const auto& c : cliques)
          if (c != tri) vertex_cliques.push_back(c);
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            bool covered = false;
            for (const auto& c : vertex_cliques) covered = covered || (contains(c, tri[i]) && contains(c, tri[j]));
            if (!covered) vertex_cliques.push_back({tri[i], tri[j]});
          }
        accept_if_matches(assemble(dual.graph.n, vertex_cliques, std::nullopt), cls, target, false, found);
      }
      // A dropped dotted edge joins two twins.
      if (!dual.undotted) break;
      for (int a = 0; a < dual.graph.n; ++a)
        for (int b = a + 1; b < dual.graph.n; ++b) {
          if (dual.graph.multiplicity(a, b) != 0) continue;
          if (dual.graph.neighbors(a) != dual.graph.neighbors(b)) continue;
          accept_if_matches(necklace_with_dotted(dual.graph, {a, b}), cls, target, true, found);
        }
      break;
    }
  }
  return finish(std::move(found));
}

bool double_dual_check(const MultiGraph& tree) {
  if (tree.n < 3 || !is_tree(tree)) throw Error("double dual check needs a tree with at least 3 vertices");
  const MultiGraph dd = clique_dual(clique_dual(tree));
  std::vector<int> relabel(tree.n, -1);
  int k = 0;
  for (int v = 0; v < tree.n; ++v)
    if (tree.degree(v) >= 2) relabel[v] = k++;
  MultiGraph inner(k);
  for (auto [a, b] : tree.edges)
    if (relabel[a] >= 0 && relabel[b] >= 0) inner.add_edge(relabel[a], relabel[b]);
  return isomorphic(dd, inner);
}

std::vector<std::pair<MultiGraph, MultiGraph>> exceptional_pairs(int n) {
  std::map<std::string, std::vector<MultiGraph>> by_diagram;
  for (const auto& g : enumerate_graphs(GraphClass::Unicyclic, n)) {
    DualGraph d = dual_graph(g, GraphClass::Unicyclic);
    d.dotted.reset();
    by_diagram[canonical_string(dual_as_graph(d))].push_back(g);
  }
  std::vector<std::pair<MultiGraph, MultiGraph>> out;
  for (auto& [key, gs] : by_diagram) {
    if (gs.size() < 2) continue;
    if (gs.size() > 2) throw Error("more than two unicyclic graphs share a dual");
    auto has_double = [](const MultiGraph& g) {
      for (std::size_t e = 0; e + 1 < g.edges.size(); ++e)
        if (g.edges[e] == g.edges[e + 1]) return true;
      return false;
    };
    if (has_double(gs[1])) std::swap(gs[0], gs[1]);
    out.emplace_back(gs[0], gs[1]);
  }
  return out;
}

std::vector<MultiGraph> d_family_graphs(int n) {
  std::set<std::string> drop;
  for (const auto& [with_double, without] : exceptional_pairs(n)) drop.insert(canonical_string(without));
  std::vector<MultiGraph> out;
  for (auto& g : enumerate_graphs(GraphClass::Unicyclic, n))
    if (!drop.count(canonical_string(g))) out.push_back(std::move(g));
  return out;
}

}  // namespace sphfam
