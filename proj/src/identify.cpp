#include "sphfam/identify.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sphfam/error.hpp"

namespace sphfam {

namespace {

int tag_order(KindTag t) {
  switch (t) {
    case KindTag::G2: return 0;
    case KindTag::A: return 1;
    case KindTag::B: return 2;
    case KindTag::D: return 3;
    case KindTag::E: return 4;
    case KindTag::F: return 5;
    case KindTag::H: return 6;
  }
  return 7;
}

bool component_less(const GroupKind& a, const GroupKind& b) {
  if (tag_order(a.tag) != tag_order(b.tag)) return tag_order(a.tag) < tag_order(b.tag);
  return a.param < b.param;
}

}  // namespace

CoxeterType CoxeterType::of(std::vector<GroupKind> parts) {
  for (auto& k : parts) {
    if (k.tag == KindTag::G2 && k.param == 3) k = GroupKind::A(2);
    if (k.tag == KindTag::G2 && k.param == 4) k = GroupKind::B(2);
  }
  std::sort(parts.begin(), parts.end(), component_less);
  return CoxeterType{std::move(parts)};
}

CoxeterType CoxeterType::dihedral(int m) {
  if (m < 2) throw std::invalid_argument("dihedral order must be >= 2");
  if (m == 2) return of({GroupKind::A(1), GroupKind::A(1)});
  return of({GroupKind::G2(m)});
}

int CoxeterType::rank() const {
  int r = 0;
  for (const auto& k : components) r += k.rank();
  return r;
}

std::string CoxeterType::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += "x";
    s += components[i].name();
  }
  return s;
}

CoxeterType CoxeterType::operator*(const CoxeterType& other) const {
  std::vector<GroupKind> parts = components;
  parts.insert(parts.end(), other.components.begin(), other.components.end());
  return of(std::move(parts));
}

CoxeterType parse_coxeter_type(std::string_view text) {
  std::vector<GroupKind> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t x = text.find('x', start);
    const std::string_view part = text.substr(start, x == std::string_view::npos ? std::string_view::npos : x - start);
    if (part == "A1") {
      parts.push_back(GroupKind::A(1));
    } else if (part == "A2") {
      parts.push_back(GroupKind::A(2));
    } else if (part == "B2") {
      parts.push_back(GroupKind::B(2));
    } else {
      parts.push_back(parse_group_kind(part));
    }
    if (x == std::string_view::npos) break;
    start = x + 1;
  }
  return CoxeterType::of(std::move(parts));
}

CoxeterMatrix coxeter_matrix(GroupKind kind) {
  const int n = kind.rank();
  CoxeterMatrix m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  auto join = [&](int a, int b, int order) { m[a][b] = m[b][a] = order; };
  switch (kind.tag) {
    case KindTag::A:
      for (int i = 0; i + 1 < n; ++i) join(i, i + 1, 3);
      break;
    case KindTag::B:
      for (int i = 0; i + 2 < n; ++i) join(i, i + 1, 3);
      join(n - 2, n - 1, 4);
      break;
    case KindTag::D:
      for (int i = 0; i + 2 < n; ++i) join(i, i + 1, 3);
      join(n - 3, n - 1, 3);
      break;
    case KindTag::E:
      for (int i = 0; i + 2 < n; ++i) join(i, i + 1, 3);
      join(2, n - 1, 3);
      break;
    case KindTag::F:
      join(0, 1, 3);
      join(1, 2, 4);
      join(2, 3, 3);
      break;
    case KindTag::H:
      join(0, 1, 5);
      for (int i = 1; i + 1 < n; ++i) join(i, i + 1, 3);
      break;
    case KindTag::G2:
      join(0, 1, kind.param);
      break;
  }
  return m;
}

namespace {

GroupKind classify_component(const CoxeterMatrix& m, const std::vector<int>& nodes) {
  const int r = static_cast<int>(nodes.size());
  auto unmatched = [] { return Error("Coxeter diagram is not of finite type"); };
  if (r == 1) return GroupKind::A(1);
  if (r == 2) return GroupKind::G2(m[nodes[0]][nodes[1]]);
  std::vector<std::vector<int>> adj(r);
  int edges = 0;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (m[nodes[a]][nodes[b]] > 2) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        ++edges;
      }
  if (edges != r - 1) throw unmatched();
  std::vector<int> branch;
  for (int a = 0; a < r; ++a) {
    if (adj[a].size() > 3) throw unmatched();
    if (adj[a].size() == 3) branch.push_back(a);
  }
  auto order = [&](int a, int b) { return m[nodes[a]][nodes[b]]; };
  if (branch.empty()) {
    int end = 0;
    while (adj[end].size() != 1) ++end;
    std::vector<int> seq;
    int prev = -1, cur = end;
    while (true) {
      int next = -1;
      for (int b : adj[cur])
        if (b != prev) next = b;
      if (next < 0) break;
      seq.push_back(order(cur, next));
      prev = cur;
      cur = next;
    }
    const auto count = [&](int v) { return std::count(seq.begin(), seq.end(), v); };
    if (count(3) == r - 1) return GroupKind::A(r);
    if (count(3) == r - 2 && count(4) == 1 && (seq.front() == 4 || seq.back() == 4)) return GroupKind::B(r);
    if (seq == std::vector<int>{3, 4, 3}) return GroupKind::F4();
    if (count(3) == r - 2 && count(5) == 1 && (seq.front() == 5 || seq.back() == 5) && r <= 4) return GroupKind::H(r);
    throw unmatched();
  }
  if (branch.size() != 1) throw unmatched();
  for (int a = 0; a < r; ++a)
    for (int b : adj[a])
      if (order(a, b) != 3) throw unmatched();
  std::vector<int> arms;
  for (int start : adj[branch[0]]) {
    int len = 1, prev = branch[0], cur = start;
    while (adj[cur].size() == 2) {
      const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return GroupKind::D(r);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return GroupKind::E(r);
  throw unmatched();
}

}  // namespace

CoxeterType classify_coxeter_matrix(const CoxeterMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> comp(n, -1);
  std::vector<GroupKind> parts;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> nodes{s};
    comp[s] = s;
    for (std::size_t q = 0; q < nodes.size(); ++q)
      for (int b = 0; b < n; ++b)
        if (comp[b] < 0 && m[nodes[q]][b] > 2) {
          comp[b] = s;
          nodes.push_back(b);
        }
    std::sort(nodes.begin(), nodes.end());
    parts.push_back(classify_component(m, nodes));
  }
  return CoxeterType::of(std::move(parts));
}

std::vector<int> reflection_closure(std::span<const int> lines, const RootSpace& space) {
  std::vector<char> in(space.line_count(), 0);
  std::vector<int> list;
  for (int l : lines)
    if (!in[l]) {
      in[l] = 1;
      list.push_back(l);
    }
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto [mirror, target] : {std::pair{list[i], list[j]}, std::pair{list[j], list[i]}}) {
        const int img = space.reflected_line(mirror, target);
        if (!in[img]) {
          in[img] = 1;
          list.push_back(img);
        }
      }
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

std::vector<int> simple_lines(std::span<const int> closed, const RootSpace& space) {
  std::vector<int> simple;
  for (int v : closed) {
    bool is_simple = true;
    for (int p : closed) {
      if (p == v || space.inner_sign(v, p) <= 0) continue;
      if (space.reflected_sign(p, v) > 0) {
        is_simple = false;
        break;
      }
    }
    if (is_simple) simple.push_back(v);
  }
  return simple;
}

namespace {

int coxeter_order(EdgeClass c) {
  switch (c) {
    case EdgeClass::Orth: return 2;
    case EdgeClass::K3: return 3;
    case EdgeClass::K4: return 4;
    case EdgeClass::K5: return 5;
    case EdgeClass::K5p: break;
  }
  throw Error("simple roots at angle 2pi/5 or 3pi/5");
}

}  // namespace

CoxeterType coxeter_type(std::span<const int> lines, const RootSpace& space) {
  if (lines.empty()) return CoxeterType{};
  const auto closed = reflection_closure(lines, space);
  const auto simple = simple_lines(closed, space);
  const int r = static_cast<int>(simple.size());
  CoxeterMatrix m(r, std::vector<int>(r, 1));
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) m[a][b] = m[b][a] = coxeter_order(space.edge_class(simple[a], simple[b]));
  return classify_coxeter_matrix(m);
}

bool generates_full_group(const Family& family) {
  const RootSpace& rs = root_space(family.ambient);
  return static_cast<int>(reflection_closure(family.line_ids, rs).size()) == rs.line_count();
}

int max_lines_for_rank(int rank) {
  // Rank 2 is unbounded (dihedral groups). Then H3, H4, B5, E6/B6, E7, E8, and B_n.
  static const int table[] = {0, 1, std::numeric_limits<int>::max(), 15, 60, 25, 36, 63, 120};
  if (rank < 0) return 0;
  if (rank <= 8) return table[rank];
  return rank * rank;
}

template <int D>
std::optional<CoxeterType> closure_type(const std::vector<std::vector<Quadratic<D>>>& gram, int cap) {
  using Q = Quadratic<D>;
  using Vec = std::vector<Q>;
  const int n = static_cast<int>(gram.size());
  if (n == 0) return CoxeterType{};
  auto form = [&](const Vec& u, const Vec& v) {
    Q s;
    for (int i = 0; i < n; ++i) {
      if (u[i].is_zero()) continue;
      Q row;
      for (int j = 0; j < n; ++j)
        if (!v[j].is_zero() && !gram[i][j].is_zero()) row += gram[i][j] * v[j];
      s += u[i] * row;
    }
    return s;
  };
  auto normalize = [](Vec v) {
    for (const auto& x : v) {
      if (x.is_zero()) continue;
      if (x.sign() < 0)
        for (auto& y : v) y = -y;
      break;
    }
    return v;
  };
  auto key = [](const Vec& v) {
    std::string s;
    for (const auto& x : v) s += to_string(x) + ",";
    return s;
  };
  std::vector<Vec> lines;
  std::map<std::string, int> index;
  auto add = [&](Vec v) {
    v = normalize(std::move(v));
    auto [it, fresh] = index.emplace(key(v), static_cast<int>(lines.size()));
    if (fresh) lines.push_back(std::move(v));
    return it->second;
  };
  for (int i = 0; i < n; ++i) {
    Vec e(n);
    e[i] = Q(1);
    add(std::move(e));
  }
  auto reflect_in = [&](const Vec& v, const Vec& a) {
    const Q k = Q(2) * form(v, a) / form(a, a);
    Vec out = v;
    if (!k.is_zero())
      for (int i = 0; i < n; ++i) out[i] -= k * a[i];
    return out;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Vec a = lines[i], b = lines[j];
      add(reflect_in(b, a));
      add(reflect_in(a, b));
      if (static_cast<int>(lines.size()) > cap) return std::nullopt;
    }
  }
  // Simple lines: positive v is simple iff no positive p != v has (v,p) > 0
  // with s_p(v) positive.
  const int L = static_cast<int>(lines.size());
  std::vector<int> simple;
  for (int v = 0; v < L; ++v) {
    bool is_simple = true;
    for (int p = 0; p < L && is_simple; ++p) {
      if (p == v || form(lines[v], lines[p]).sign() <= 0) continue;
      const Vec img = reflect_in(lines[v], lines[p]);
      for (const auto& x : img) {
        if (x.is_zero()) continue;
        if (x.sign() > 0) is_simple = false;
        break;
      }
    }
    if (is_simple) simple.push_back(v);
  }
  const int r = static_cast<int>(simple.size());
  CoxeterMatrix m(r, std::vector<int>(r, 1));
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      const Q ip = form(lines[simple[a]], lines[simple[b]]);
      const Q c = ip * ip / (form(lines[simple[a]], lines[simple[a]]) * form(lines[simple[b]], lines[simple[b]]));
      int order = 0;
      if (c.is_zero()) order = 2;
      else if (c == Q(Rational(1, 4))) order = 3;
      else if (c == Q(Rational(1, 2))) order = 4;
      else if (c == Q(Rational(3, 4))) order = 6;
      else if (D == 5 && c == Q(Rational(3, 8), Rational(1, 8))) order = 5;
      if (order == 0) throw Error("unexpected angle between simple roots");
      m[a][b] = m[b][a] = order;
    }
  return classify_coxeter_matrix(m);
}

template std::optional<CoxeterType> closure_type<2>(const std::vector<std::vector<Quadratic<2>>>&, int);
template std::optional<CoxeterType> closure_type<3>(const std::vector<std::vector<Quadratic<3>>>&, int);
template std::optional<CoxeterType> closure_type<5>(const std::vector<std::vector<Quadratic<5>>>&, int);

}  // namespace sphfam
