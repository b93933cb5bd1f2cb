#include "sphfam/subprop.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "sphfam/enumerate.hpp"
#include "sphfam/error.hpp"

namespace sphfam {

namespace {

// cos(k*pi/l) when it lies in Q(sqrt(D)).
template <int D>
std::optional<Quadratic<D>> exact_cos(Angle a) {
  using Q = Quadratic<D>;
  const int s = 2 * a.k < a.l ? 1 : -1;  // sign of the cosine
  switch (a.l) {
    case 2: return Q(0);
    case 3: return Q(Rational(s, 2));
    case 4:
      if constexpr (D == 2) return Q(Rational(0), Rational(s, 2));
      return std::nullopt;
    case 6:
      if constexpr (D == 3) return Q(Rational(0), Rational(s, 2));
      return std::nullopt;
    case 5:
      if constexpr (D == 5) {
        if (a.k == 1 || a.k == 4) return Q(Rational(s, 4), Rational(s, 4));
        return Q(Rational(-s, 4), Rational(s, 4));
      }
      return std::nullopt;
    default: return std::nullopt;
  }
}

template <int D>
using QMatrix = std::vector<std::vector<Quadratic<D>>>;

template <int D>
QMatrix<D> cosine_gram(const std::vector<std::vector<Angle>>& angles, const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  QMatrix<D> g(n, std::vector<Quadratic<D>>(n, Quadratic<D>(1)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto c = exact_cos<D>(angles[idx[i]][idx[j]]);
      if (!c) throw Error("angle " + angles[idx[i]][idx[j]].to_string() + " is outside the field");
      g[i][j] = -*c;
    }
  return g;
}

// Gaussian elimination pivots are ratios of leading minors.
template <int D>
bool positive_definite(QMatrix<D> g) {
  const int n = static_cast<int>(g.size());
  for (int k = 0; k < n; ++k) {
    if (g[k][k].sign() <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      if (g[i][k].is_zero()) continue;
      const Quadratic<D> f = g[i][k] / g[k][k];
      for (int j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return true;
}

std::vector<std::vector<Angle>> angles_of(const LabeledDiagram& d) {
  const int n = d.n();
  std::vector<std::vector<Angle>> a(n, std::vector<Angle>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) a[i][j] = d.angle(i, j);
  return a;
}

int field_of(const FamilyDiagram& d) {
  bool four = false, five = false;
  for (auto c : d.edge) {
    four = four || c == EdgeClass::K4;
    five = five || c == EdgeClass::K5 || c == EdgeClass::K5p;
  }
  if (four && five) throw Error("diagram mixes the 4- and 5-classes");
  return four ? 2 : 5;
}

template <int D>
std::optional<CoxeterType> closure_of(const std::vector<std::vector<Angle>>& angles, const std::vector<int>& idx,
                                      int cap) {
  return closure_type<D>(cosine_gram<D>(angles, idx), cap);
}

std::optional<CoxeterType> closure_of(int field, const std::vector<std::vector<Angle>>& angles,
                                      const std::vector<int>& idx, int cap) {
  return field == 2 ? closure_of<2>(angles, idx, cap) : closure_of<5>(angles, idx, cap);
}

std::vector<int> all_but(int n, int skip) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i)
    if (i != skip) v.push_back(i);
  return v;
}

int line_count(GroupKind k) {
  const int n = k.rank();
  switch (k.tag) {
    case KindTag::A: return n * (n + 1) / 2;
    case KindTag::B: return n * n;
    case KindTag::D: return n * (n - 1);
    case KindTag::E: return n == 6 ? 36 : (n == 7 ? 63 : 120);
    case KindTag::F: return 24;
    case KindTag::H: return n == 3 ? 15 : 60;
    case KindTag::G2: return k.param;
  }
  return 0;
}

int line_count(const CoxeterType& t) {
  int s = 0;
  for (const auto& k : t.components) s += line_count(k);
  return s;
}

// ---- exact integer arithmetic in Z[sqrt(D)] for the sweeps ----

template <int D>
struct ZQ {
  std::int64_t a = 0, b = 0;

  int sign() const {
    const int sa = (a > 0) - (a < 0);
    const int sb = (b > 0) - (b < 0);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const __int128 lhs = static_cast<__int128>(a) * a;
    const __int128 rhs = static_cast<__int128>(D) * b * b;
    return lhs > rhs ? sa : sb;
  }
  friend ZQ operator*(ZQ x, ZQ y) { return {x.a * y.a + D * x.b * y.b, x.a * y.b + x.b * y.a}; }
  friend ZQ operator-(ZQ x, ZQ y) { return {x.a - y.a, x.b - y.b}; }
  // Exact quotient; Bareiss guarantees divisibility.
  friend ZQ operator/(ZQ x, ZQ y) {
    const std::int64_t n = y.a * y.a - D * y.b * y.b;
    const ZQ p = x * ZQ{y.a, -y.b};
    return {p.a / n, p.b / n};
  }
};

// Angle alphabet with scaled Gram entries -scale*cos in Z[sqrt(D)].
template <int D>
struct Alphabet {
  std::vector<Angle> labels;
  std::vector<ZQ<D>> entry;
  ZQ<D> diagonal;
  std::vector<char> five;  // label has denominator 5

  Alphabet(std::vector<Angle> ls, int scale) : labels(std::move(ls)), diagonal{scale, 0} {
    for (const auto& a : labels) {
      const Quadratic<D> c = -Quadratic<D>(scale) * *exact_cos<D>(a);
      entry.push_back({c.rational_part().get_num().get_si(), c.radical_part().get_num().get_si()});
      five.push_back(a.l == 5);
    }
  }
  int size() const { return static_cast<int>(labels.size()); }
};

struct PairIndex {
  int n;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> id;  // n*n -> pair index

  explicit PairIndex(int size) : n(size), id(static_cast<std::size_t>(size) * size, -1) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        id[i * n + j] = id[j * n + i] = static_cast<int>(pairs.size());
        pairs.emplace_back(i, j);
      }
  }
  int count() const { return static_cast<int>(pairs.size()); }
};

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

template <int D>
bool positive_definite(const Alphabet<D>& al, const PairIndex& pi, const int* digit) {
  const int n = pi.n;
  ZQ<D> m[kMaxVertices][kMaxVertices];
  for (int i = 0; i < n; ++i) {
    m[i][i] = al.diagonal;
    for (int j = i + 1; j < n; ++j) m[i][j] = m[j][i] = al.entry[digit[pi.id[i * n + j]]];
  }
  ZQ<D> prev{1, 0};
  for (int k = 0; k < n; ++k) {
    if (m[k][k].sign() <= 0) return false;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return true;
}

template <int D>
LabeledDiagram labeled_of(const Alphabet<D>& al, const PairIndex& pi, const int* digit) {
  std::vector<std::vector<Angle>> a(pi.n, std::vector<Angle>(pi.n));
  for (int p = 0; p < pi.count(); ++p) {
    const auto [i, j] = pi.pairs[p];
    a[i][j] = a[j][i] = al.labels[digit[p]];
  }
  return labeled_from_angles(a);
}

void decode(std::uint64_t idx, int base, int count, int* digit) {
  for (int p = 0; p < count; ++p) {
    digit[p] = static_cast<int>(idx % base);
    idx /= base;
  }
}

// allowed[s] for every assignment s of the rank-(n-1) simplex: realizable and
// generating one of `types`.
template <int D>
std::vector<char> vertex_table(const Alphabet<D>& al, int n, const std::vector<CoxeterType>& types) {
  const PairIndex pi(n - 1);
  const std::uint64_t total = ipow(al.size(), pi.count());
  int cap = 0;
  for (const auto& t : types) cap = std::max(cap, line_count(t));
  std::vector<char> allowed(total, 0);
  std::map<std::string, char> memo;
  int digit[kMaxVertices * kMaxVertices];
  for (std::uint64_t s = 0; s < total; ++s) {
    decode(s, al.size(), pi.count(), digit);
    if (!positive_definite(al, pi, digit)) continue;
    const LabeledDiagram d = labeled_of(al, pi, digit);
    const std::string key = family_key(d);
    auto it = memo.find(key);
    if (it == memo.end()) {
      const auto t = closure_of<D>(angles_of(d), all_but(pi.n, -1), cap);
      const char ok = t && std::find(types.begin(), types.end(), *t) != types.end();
      it = memo.emplace(key, ok).first;
    }
    allowed[s] = it->second;
  }
  return allowed;
}

// For each dropped vertex, the full pair index behind each sub pair.
std::vector<std::vector<int>> sub_pair_maps(const PairIndex& full) {
  const PairIndex sub(full.n - 1);
  std::vector<std::vector<int>> maps(full.n);
  for (int k = 0; k < full.n; ++k) {
    const std::vector<int> keep = all_but(full.n, k);
    for (const auto& [i, j] : sub.pairs) maps[k].push_back(full.id[keep[i] * full.n + keep[j]]);
  }
  return maps;
}

std::uint64_t sub_index(const std::vector<int>& map, const int* digit, int base) {
  std::uint64_t s = 0;
  for (std::size_t q = map.size(); q-- > 0;) s = s * base + digit[map[q]];
  return s;
}

// Label 0 is the right angle.
bool connected(const PairIndex& pi, const int* digit) {
  unsigned seen = 1, frontier = 1;
  while (frontier) {
    unsigned next = 0;
    for (int v = 0; v < pi.n; ++v)
      if (frontier >> v & 1)
        for (int w = 0; w < pi.n; ++w)
          if (!(seen >> w & 1) && w != v && digit[pi.id[v * pi.n + w]] != 0) next |= 1u << w;
    seen |= next;
    frontier = next;
  }
  return seen == (1u << pi.n) - 1;
}

int threads_for(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

// Marks every vertex ordering and sign pattern of the families' simplices.
template <int D>
void mark_families(const EnumerationResult& r, const Alphabet<D>& al, const PairIndex& pi, std::vector<char>& bits) {
  std::map<Angle, int> label;
  for (int i = 0; i < al.size(); ++i) label.emplace(al.labels[i], i);
  std::vector<int> perm(pi.n);
  for (const auto& f : r.families)
    for (const auto& s : signed_simplices(f.witness)) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::uint64_t idx = 0;
        bool inside = true;
        for (int p = pi.count(); p-- > 0;) {
          const auto [i, j] = pi.pairs[p];
          const auto it = label.find(s.angle(perm[i], perm[j]));
          if (it == label.end()) {
            inside = false;
            break;
          }
          idx = idx * al.size() + it->second;
        }
        if (inside) bits[idx] = 1;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

bool simply_laced(GroupKind k) { return k.tag == KindTag::A || k.tag == KindTag::D || k.tag == KindTag::E; }

}  // namespace

std::string VertexProfile::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) s += ", ";
    s += types[i] ? types[i]->to_string() : "inf";
  }
  return s + "}";
}

VertexProfile vertex_profile(const Family& family) {
  const RootSpace& rs = root_space(family.ambient);
  const int n = static_cast<int>(family.line_ids.size());
  VertexProfile p;
  for (int i = 0; i < n; ++i) {
    std::vector<int> rest;
    for (int j = 0; j < n; ++j)
      if (j != i) rest.push_back(family.line_ids[j]);
    p.types.emplace_back(coxeter_type(rest, rs));
  }
  return p;
}

VertexProfile vertex_profile(const LabeledDiagram& d) {
  const int field = field_of(d.diagram);
  const auto angles = angles_of(d);
  VertexProfile p;
  for (int i = 0; i < d.n(); ++i) p.types.push_back(closure_of(field, angles, all_but(d.n(), i), max_lines_for_rank(d.n() - 1)));
  return p;
}

std::vector<CoxeterType> coxeter_vertex_types(GroupKind kind) {
  const CoxeterMatrix m = coxeter_matrix(kind);
  const int n = static_cast<int>(m.size());
  std::set<CoxeterType> out;
  for (int k = 0; k < n; ++k) {
    CoxeterMatrix sub;
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      std::vector<int> row;
      for (int j = 0; j < n; ++j)
        if (j != k) row.push_back(m[i][j]);
      sub.push_back(std::move(row));
    }
    out.insert(classify_coxeter_matrix(sub));
  }
  return {out.begin(), out.end()};
}

bool satisfies_subgroup_property(const VertexProfile& p, GroupKind kind) {
  if (static_cast<int>(p.types.size()) != kind.rank()) return false;
  const auto types = coxeter_vertex_types(kind);
  return std::all_of(p.types.begin(), p.types.end(), [&](const auto& t) {
    return t && std::find(types.begin(), types.end(), *t) != types.end();
  });
}

bool realizable(const LabeledDiagram& d) {
  const auto angles = angles_of(d);
  const auto idx = all_but(d.n(), -1);
  return field_of(d.diagram) == 2 ? positive_definite(cosine_gram<2>(angles, idx))
                                  : positive_definite(cosine_gram<5>(angles, idx));
}

SubgroupSweepReport theorem_subgr_equivalence(GroupKind kind, const SubgroupSweepOptions& options) {
  if (!kind.crystallographic() || kind.rank() < 4) throw UnsupportedKind("sweep needs a crystallographic kind of rank >= 4");
  std::vector<Angle> labels{Angle(1, 2), Angle(1, 3), Angle(2, 3)};
  if (!simply_laced(kind)) {
    labels.emplace_back(1, 4);
    labels.emplace_back(3, 4);
  }
  const Alphabet<2> al(labels, 2);
  const int n = kind.rank();
  const PairIndex pi(n);
  const std::uint64_t total = ipow(al.size(), pi.count());
  if (!options.allow_large && (n > 6 || total > 50'000'000))
    throw GuardRailError("sweep over " + std::to_string(total) + " diagrams needs the override");

  SubgroupSweepReport rep;
  rep.kind = kind;
  rep.labels = labels;
  rep.assignments = total;

  const std::vector<char> allowed = vertex_table(al, n, coxeter_vertex_types(kind));
  const auto maps = sub_pair_maps(pi);

  EnumerateOptions eo;
  eo.jobs = options.jobs;
  std::vector<char> full(total, 0), sub(total, 0);
  mark_families(enumerate_families(kind, eo), al, pi, full);
  eo.full_group_only = false;
  mark_families(enumerate_families(kind, eo), al, pi, sub);

  const int threads = threads_for(options.jobs);
  struct Local {
    std::uint64_t realizable = 0, with = 0, from = 0, bad = 0, bad_sub = 0;
    std::vector<std::uint64_t> ex, ex_sub;
  };
  std::vector<Local> local(threads);
  const std::size_t keep = options.max_examples;
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(total); ++t) {
    Local& l = local[omp_get_thread_num()];
    const auto idx = static_cast<std::uint64_t>(t);
    int digit[kMaxVertices * kMaxVertices];
    decode(idx, al.size(), pi.count(), digit);
    if (!connected(pi, digit)) continue;
    const bool pd = positive_definite(al, pi, digit);
    bool prop = pd;
    for (int k = 0; prop && k < n; ++k) prop = allowed[sub_index(maps[k], digit, al.size())];
    l.realizable += pd;
    l.with += prop;
    l.from += full[idx] && pd;
    if (prop != static_cast<bool>(full[idx])) {
      ++l.bad;
      if (l.ex.size() < keep) l.ex.push_back(idx);
    }
    if (prop != static_cast<bool>(sub[idx])) {
      ++l.bad_sub;
      if (l.ex_sub.size() < keep) l.ex_sub.push_back(idx);
    }
  }
  std::vector<std::uint64_t> ex, ex_sub;
  for (const auto& l : local) {
    rep.realizable += l.realizable;
    rep.with_property += l.with;
    rep.from_families += l.from;
    rep.counterexamples += l.bad;
    rep.subgroup_reading_mismatches += l.bad_sub;
    ex.insert(ex.end(), l.ex.begin(), l.ex.end());
    ex_sub.insert(ex_sub.end(), l.ex_sub.begin(), l.ex_sub.end());
  }
  auto materialize = [&](std::vector<std::uint64_t>& v, std::vector<LabeledDiagram>& out) {
    std::sort(v.begin(), v.end());
    if (v.size() > keep) v.resize(keep);
    int digit[kMaxVertices * kMaxVertices];
    for (auto idx : v) {
      decode(idx, al.size(), pi.count(), digit);
      out.push_back(labeled_of(al, pi, digit));
    }
  };
  materialize(ex, rep.examples);
  materialize(ex_sub, rep.subgroup_reading_examples);
  return rep;
}

Prop5Report prop5_report(int jobs) {
  const Alphabet<5> al({Angle(1, 2), Angle(1, 3), Angle(2, 3), Angle(1, 5), Angle(4, 5), Angle(2, 5), Angle(3, 5)}, 4);
  const GroupKind h4 = GroupKind::H(4);
  const int n = 4;
  const PairIndex pi(n);
  const std::uint64_t total = ipow(al.size(), pi.count());
  const std::vector<char> allowed = vertex_table(al, n, coxeter_vertex_types(h4));
  const auto maps = sub_pair_maps(pi);

  Prop5Report rep;
  rep.assignments = total;
  const int threads = threads_for(jobs);
  std::vector<std::vector<std::uint64_t>> found(threads);
  std::vector<std::uint64_t> real(threads, 0);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(total); ++t) {
    int digit[kMaxVertices * kMaxVertices];
    decode(static_cast<std::uint64_t>(t), al.size(), pi.count(), digit);
    bool five = false;
    for (int p = 0; p < pi.count(); ++p) five = five || al.five[digit[p]];
    if (!five || !positive_definite(al, pi, digit)) continue;
    ++real[omp_get_thread_num()];
    bool prop = true;
    for (int k = 0; prop && k < n; ++k) prop = allowed[sub_index(maps[k], digit, al.size())];
    if (prop) found[omp_get_thread_num()].push_back(static_cast<std::uint64_t>(t));
  }
  for (auto r : real) rep.realizable += r;

  std::map<std::string, bool> infinite;  // by family key
  std::map<CanonicalCode, FamilyDiagram> bad;
  int digit[kMaxVertices * kMaxVertices];
  for (const auto& part : found)
    for (auto idx : part) {
      ++rep.with_property;
      decode(idx, al.size(), pi.count(), digit);
      const LabeledDiagram d = labeled_of(al, pi, digit);
      const std::string key = family_key(d);
      auto it = infinite.find(key);
      if (it == infinite.end())
        it = infinite.emplace(key, !closure_of<5>(angles_of(d), all_but(n, -1), max_lines_for_rank(n))).first;
      if (!it->second) continue;
      ++rep.non_discrete;
      bad.emplace(canonical_code(d.diagram, CodeScheme::Base4), d.diagram);
    }

  EnumerateOptions eo;
  eo.jobs = jobs;
  eo.full_group_only = false;
  std::set<CanonicalCode> inside;
  for (const auto& f : enumerate_families(h4, eo).families) inside.insert(f.code);
  for (const auto& [c, d] : bad) (inside.count(c) ? rep.shared_with_h4 : rep.excluded).push_back(d);
  return rep;
}

std::vector<FamilyDiagram> prop5_excluded_diagrams() { return prop5_report().excluded; }

bool dihedral_discrete(int k, int m) {
  if (k <= 0 || m <= 0 || k >= m) throw Error("dihedral angle needs 0 < k < m");
  return std::gcd(k, m) == 1;
}

std::string Classification::to_string() const {
  switch (verdict) {
    case Verdict::Discrete: {
      std::string s = "Discrete(" + type.to_string() + ")";
      if (code) s += ", code " + code->to_string();
      return s;
    }
    case Verdict::NonDiscrete: return "NonDiscrete";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

enum class BlockVerdict { Discrete, NonDiscrete, Unknown };

// Positive definiteness in floating point, for angles outside the quadratic
// fields: 1 yes, -1 no, 0 too close to call.
int approx_positive_definite(const std::vector<std::vector<Angle>>& angles, const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  std::vector<std::vector<long double>> g(n, std::vector<long double>(n, 1));
  const long double pi = std::acos(-1.0L);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        const Angle a = angles[idx[i]][idx[j]];
        g[i][j] = -std::cos(pi * a.k / a.l);
      }
  for (int k = 0; k < n; ++k) {
    if (std::fabs(g[k][k]) < 1e-12L) return 0;
    if (g[k][k] < 0) return -1;
    for (int i = k + 1; i < n; ++i) {
      const long double f = g[i][k] / g[k][k];
      for (int j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return 1;
}

BlockVerdict classify_block(const std::vector<std::vector<Angle>>& angles, const std::vector<int>& idx,
                            CoxeterType& type) {
  const int r = static_cast<int>(idx.size());
  if (r == 1) {
    type = CoxeterType::of({GroupKind::A(1)});
    return BlockVerdict::Discrete;
  }
  if (r == 2) {
    type = CoxeterType::dihedral(angles[idx[0]][idx[1]].l);
    return BlockVerdict::Discrete;
  }
  std::set<int> dens;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (angles[idx[i]][idx[j]].l != 2) dens.insert(angles[idx[i]][idx[j]].l);
  auto within = [&](std::initializer_list<int> allowed) {
    return std::all_of(dens.begin(), dens.end(),
                       [&](int l) { return std::find(allowed.begin(), allowed.end(), l) != allowed.end(); });
  };
  // Finite irreducible groups of rank >= 3 only have dihedral subgroups of
  // orders 4, 6, 8 and 10, never both 8 and 10.
  if (within({3, 4})) {
    const auto g = cosine_gram<2>(angles, idx);
    if (!positive_definite(g)) throw NotRealizable("angles do not bound a spherical simplex");
    const auto t = closure_type<2>(g, max_lines_for_rank(r));
    if (!t) return BlockVerdict::NonDiscrete;
    type = *t;
    return BlockVerdict::Discrete;
  }
  if (within({3, 5})) {
    const auto g = cosine_gram<5>(angles, idx);
    if (!positive_definite(g)) throw NotRealizable("angles do not bound a spherical simplex");
    const auto t = closure_type<5>(g, max_lines_for_rank(r));
    if (!t) return BlockVerdict::NonDiscrete;
    type = *t;
    return BlockVerdict::Discrete;
  }
  if (within({3, 6})) {
    if (!positive_definite(cosine_gram<3>(angles, idx))) throw NotRealizable("angles do not bound a spherical simplex");
    return BlockVerdict::NonDiscrete;
  }
  const int pd = approx_positive_definite(angles, idx);
  if (pd < 0) throw NotRealizable("angles do not bound a spherical simplex");
  return pd > 0 ? BlockVerdict::NonDiscrete : BlockVerdict::Unknown;
}

}  // namespace

Classification classify_simplex(const std::vector<std::vector<Angle>>& angles) {
  const int n = static_cast<int>(angles.size());
  if (n == 0) throw Error("empty angle matrix");
  for (const auto& row : angles)
    if (static_cast<int>(row.size()) != n) throw Error("angle matrix is not square");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (angles[i][j] != angles[j][i]) throw Error("angle matrix is not symmetric");
      if (angles[i][j].k <= 0 || angles[i][j].k >= angles[i][j].l) throw Error("angles must lie strictly between 0 and pi");
    }

  // Blocks: components of the graph of non-right angles.
  std::vector<int> block(n, -1);
  int blocks = 0;
  for (int s = 0; s < n; ++s) {
    if (block[s] >= 0) continue;
    std::vector<int> stack{s};
    block[s] = blocks;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (w != v && block[w] < 0 && angles[v][w].l != 2) {
          block[w] = blocks;
          stack.push_back(w);
        }
    }
    ++blocks;
  }

  Classification out;
  CoxeterType product;
  bool unknown = false, infinite = false;
  for (int b = 0; b < blocks; ++b) {
    std::vector<int> idx;
    for (int v = 0; v < n; ++v)
      if (block[v] == b) idx.push_back(v);
    CoxeterType t;
    switch (classify_block(angles, idx, t)) {
      case BlockVerdict::Discrete: product = product * t; break;
      case BlockVerdict::NonDiscrete: infinite = true; break;
      case BlockVerdict::Unknown: unknown = true; break;
    }
  }
  if (infinite) {
    out.verdict = Classification::Verdict::NonDiscrete;
  } else if (unknown) {
    out.verdict = Classification::Verdict::Unknown;
  } else {
    out.verdict = Classification::Verdict::Discrete;
    out.type = product;
    if (n >= 2 && product.indecomposable() && product.components[0].has_root_space())
      out.code = canonical_code(labeled_from_angles(angles).diagram, default_scheme(product.components[0]));
  }
  return out;
}

}  // namespace sphfam
