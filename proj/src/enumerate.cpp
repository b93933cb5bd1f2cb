#include "sphfam/enumerate.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "sphfam/error.hpp"
#include "sphfam/identify.hpp"
#include "sphfam/modp.hpp"

namespace sphfam {

EnumerationMode parse_mode(std::string_view text) {
  if (text == "direct") return EnumerationMode::Direct;
  if (text == "bfs") return EnumerationMode::BFS;
  if (text == "auto") return EnumerationMode::Auto;
  throw ParseError("unknown mode '" + std::string(text) + "' (expected direct, bfs or auto)");
}

std::string_view to_string(EnumerationMode m) {
  switch (m) {
    case EnumerationMode::Direct: return "direct";
    case EnumerationMode::BFS: return "bfs";
    case EnumerationMode::Auto: return "auto";
  }
  return "?";
}

std::vector<CanonicalCode> EnumerationResult::distinct_codes() const {
  std::vector<CanonicalCode> out;
  for (const auto& f : families)
    if (out.empty() || !(out.back() == f.code)) out.push_back(f.code);
  return out;
}

std::string EnumerationResult::codes_text() const {
  std::string s;
  for (const auto& c : distinct_codes()) s += c.to_string() + "\n";
  return s;
}

double direct_tuple_count(GroupKind kind) {
  const RootSpace& rs = root_space(kind);
  double c = 1;
  for (int i = 0; i < rs.rank(); ++i) c = c * (rs.line_count() - i) / (i + 1);
  return c;
}

std::string checkpoint_path(const std::string& dir, GroupKind kind, int level) {
  return (std::filesystem::path(dir) / (kind.name() + "-level" + std::to_string(level) + ".ckpt")).string();
}

namespace {

using Tuple = std::vector<int>;

void load_tables(const RootSpace& rs, const Tuple& ids, DigitMatrix& cls, SignTable& signs) {
  const int n = static_cast<int>(ids.size());
  cls = DigitMatrix(n);
  signs.fill(0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cls.set(i, j, static_cast<std::uint8_t>(rs.edge_class(ids[i], ids[j])));
      const auto s = static_cast<signed char>(rs.inner_sign(ids[i], ids[j]));
      signs[i * kMaxVertices + j] = s;
      signs[j * kMaxVertices + i] = s;
    }
}

std::string tuple_key(const RootSpace& rs, const Tuple& ids) {
  DigitMatrix cls;
  SignTable signs;
  load_tables(rs, ids, cls, signs);
  return family_key(cls, signs);
}

int thread_count(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

void report(const EnumerateOptions& o, const std::string& msg) {
  if (o.progress) o.progress(msg);
}

// ---------------------------------------------------------------- Direct

struct DirectEntry {
  Tuple witness;
  std::map<std::string, Tuple> embeddings;
};
using DirectMap = std::unordered_map<std::string, DirectEntry>;

void keep_min(Tuple& slot, const Tuple& t) {
  if (slot.empty() || t < slot) slot = t;
}

void direct_visit(const Tuple& ids, GroupKind kind, const RootSpace& rs, const EnumerateOptions& o, DirectMap& out) {
  DirectEntry& e = out[tuple_key(rs, ids)];
  keep_min(e.witness, ids);
  if (o.embedding_key) keep_min(e.embeddings[o.embedding_key(Family{kind, ids})], ids);
}

// All full-rank increasing tuples whose first element is `first`.
void direct_subtree(int first, GroupKind kind, const RootSpace& rs, const EnumerateOptions& o, DirectMap& out) {
  const int r = rs.rank();
  const int lines = rs.line_count();
  std::vector<modp::EchelonBasis> bases(r + 1, modp::EchelonBasis(rs.ambient_dim()));
  Tuple ids{first};
  bases[1] = bases[0];
  bases[1].try_add(rs.modp_line(first));
  // Iterative DFS; ids[d] ranges over lines after ids[d-1].
  std::vector<int> next(r + 1, 0);
  int depth = 1;
  next[1] = first + 1;
  if (r == 1) {
    direct_visit(ids, kind, rs, o, out);
    return;
  }
  while (depth >= 1) {
    if (next[depth] > lines - (r - depth)) {
      --depth;
      ids.pop_back();
      if (depth < 1) break;
      continue;
    }
    const int cand = next[depth]++;
    if (!bases[depth].independent(rs.modp_line(cand))) continue;
    ids.push_back(cand);
    if (depth + 1 == r) {
      direct_visit(ids, kind, rs, o, out);
      ids.pop_back();
      continue;
    }
    bases[depth + 1] = bases[depth];
    bases[depth + 1].try_add(rs.modp_line(cand));
    ++depth;
    next[depth] = cand + 1;
  }
}

void merge_direct(DirectMap& into, DirectMap&& from) {
  for (auto& [key, entry] : from) {
    auto [it, fresh] = into.try_emplace(key, std::move(entry));
    if (fresh) continue;
    keep_min(it->second.witness, entry.witness);
    for (auto& [ek, t] : entry.embeddings) keep_min(it->second.embeddings[ek], t);
  }
}

DirectMap direct_serial(GroupKind kind, const RootSpace& rs, const EnumerateOptions& o) {
  DirectMap out;
  for (int first = 0; first < rs.line_count(); ++first) direct_subtree(first, kind, rs, o, out);
  return out;
}

DirectMap direct_parallel(GroupKind kind, const RootSpace& rs, const EnumerateOptions& o) {
  const int threads = thread_count(o.jobs);
  std::vector<DirectMap> local(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int first = 0; first < rs.line_count(); ++first)
    direct_subtree(first, kind, rs, o, local[omp_get_thread_num()]);
  DirectMap out;
  for (auto& m : local) merge_direct(out, std::move(m));
  return out;
}

// ---------------------------------------------------------------- BFS

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t x = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t mix_sorted(std::vector<std::uint64_t>& v, std::uint64_t seed) {
  std::sort(v.begin(), v.end());
  std::uint64_t h = seed;
  for (auto x : v) h = mix(h, x);
  return mix(h, v.size());
}

// Invariant of how a partial tuple sits among all ambient lines: vertex colors
// from a few refinement rounds, then for every ambient line its classes to the
// colored members and the sign products of the triangles it closes.
std::string column_signature(const RootSpace& rs, const Tuple& ids) {
  const int k = static_cast<int>(ids.size());
  std::vector<std::uint64_t> color(k, 1);
  for (int round = 0; round < 3; ++round) {
    std::vector<std::uint64_t> next(k);
    for (int v = 0; v < k; ++v) {
      std::vector<std::uint64_t> nb;
      for (int w = 0; w < k; ++w)
        if (w != v) nb.push_back(mix(static_cast<std::uint64_t>(rs.edge_class(ids[v], ids[w])), color[w]));
      next[v] = mix(color[v], mix_sorted(nb, 7));
    }
    color = std::move(next);
  }
  modp::EchelonBasis basis(rs.ambient_dim());
  for (int id : ids) basis.try_add(rs.modp_line(id));
  std::vector<std::uint64_t> columns;
  columns.reserve(rs.line_count());
  std::vector<std::uint64_t> items, tris;
  for (int l = 0; l < rs.line_count(); ++l) {
    items.clear();
    tris.clear();
    int member = -1;
    for (int s = 0; s < k; ++s) {
      if (ids[s] == l) {
        member = s;
        continue;
      }
      const auto c = rs.edge_class(l, ids[s]);
      if (c != EdgeClass::Orth) items.push_back(mix(static_cast<std::uint64_t>(c), color[s]));
    }
    if (member >= 0) {
      columns.push_back(mix(0xfeedULL, color[member]));
      continue;
    }
    for (int s = 0; s < k; ++s) {
      if (rs.edge_class(l, ids[s]) == EdgeClass::Orth) continue;
      for (int t = s + 1; t < k; ++t) {
        if (rs.edge_class(l, ids[t]) == EdgeClass::Orth || rs.edge_class(ids[s], ids[t]) == EdgeClass::Orth) continue;
        const int product = rs.inner_sign(l, ids[s]) * rs.inner_sign(ids[s], ids[t]) * rs.inner_sign(ids[t], l);
        std::uint64_t a = mix(static_cast<std::uint64_t>(rs.edge_class(l, ids[s])), color[s]);
        std::uint64_t b = mix(static_cast<std::uint64_t>(rs.edge_class(l, ids[t])), color[t]);
        if (b < a) std::swap(a, b);
        tris.push_back(mix(mix(mix(a, b), static_cast<std::uint64_t>(rs.edge_class(ids[s], ids[t]))),
                           static_cast<std::uint64_t>(product + 2)));
      }
    }
    const std::uint64_t in_span = basis.independent(rs.modp_line(l)) ? 1 : 2;
    columns.push_back(mix(mix(in_span, mix_sorted(items, 11)), mix_sorted(tris, 13)));
  }
  auto copy = columns;
  const std::uint64_t h1 = mix_sorted(columns, 0x51ed270b27c3a1f5ULL);
  const std::uint64_t h2 = mix_sorted(copy, 0x2545f4914f6cdd1dULL);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(h1),
                static_cast<unsigned long long>(h2));
  return buf;
}

using Level = std::map<std::string, Tuple>;

std::string bfs_key(const RootSpace& rs, const Tuple& ids, bool final_level) {
  std::string key = tuple_key(rs, ids);
  if (!final_level) key += "|" + column_signature(rs, ids);
  return key;
}

void keep_in(std::unordered_map<std::string, Tuple>& m, std::string key, const Tuple& t) {
  auto [it, fresh] = m.try_emplace(std::move(key), t);
  if (!fresh && t < it->second) it->second = t;
}

void expand_one(const RootSpace& rs, const Tuple& ids, bool final_level,
                std::unordered_map<std::string, Tuple>& out) {
  modp::EchelonBasis basis(rs.ambient_dim());
  for (int id : ids) basis.try_add(rs.modp_line(id));
  for (int l = 0; l < rs.line_count(); ++l) {
    if (std::find(ids.begin(), ids.end(), l) != ids.end()) continue;
    if (!basis.independent(rs.modp_line(l))) continue;
    Tuple t = ids;
    t.insert(std::upper_bound(t.begin(), t.end(), l), l);
    keep_in(out, bfs_key(rs, t, final_level), t);
  }
}

Level to_level(std::unordered_map<std::string, Tuple>&& m) { return Level(m.begin(), m.end()); }

Level expand_serial(const RootSpace& rs, const Level& level, bool final_level) {
  std::unordered_map<std::string, Tuple> out;
  for (const auto& [key, ids] : level) expand_one(rs, ids, final_level, out);
  return to_level(std::move(out));
}

Level expand_parallel(const RootSpace& rs, const Level& level, bool final_level, int jobs) {
  const int threads = thread_count(jobs);
  std::vector<const Tuple*> work;
  for (const auto& [key, ids] : level) work.push_back(&ids);
  std::vector<std::unordered_map<std::string, Tuple>> local(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t i = 0; i < work.size(); ++i) expand_one(rs, *work[i], final_level, local[omp_get_thread_num()]);
  std::unordered_map<std::string, Tuple> out;
  for (auto& m : local)
    for (auto& [key, t] : m) keep_in(out, key, t);
  return to_level(std::move(out));
}

void save_level(const std::string& path, GroupKind kind, int k, const Level& level) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    f << "sphfam-bfs-checkpoint v1 " << kind.name() << " " << k << " " << level.size() << "\n";
    for (const auto& [key, ids] : level) {
      f << key;
      for (int id : ids) f << " " << id;
      f << "\n";
    }
    if (!f) throw Error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

bool load_level(const std::string& path, GroupKind kind, int k, const RootSpace& rs, Level& level) {
  std::ifstream f(path);
  if (!f) return false;
  std::string magic, version, name;
  int lvl = 0;
  std::size_t count = 0;
  f >> magic >> version >> name >> lvl >> count;
  if (magic != "sphfam-bfs-checkpoint" || version != "v1" || name != kind.name() || lvl != k) return false;
  std::string line;
  std::getline(f, line);
  Level out;
  while (std::getline(f, line)) {
    std::istringstream in(line);
    std::string key;
    in >> key;
    Tuple ids;
    int id;
    while (in >> id) {
      if (id < 0 || id >= rs.line_count()) return false;
      ids.push_back(id);
    }
    if (static_cast<int>(ids.size()) != k) return false;
    out.emplace(std::move(key), std::move(ids));
  }
  if (out.size() != count) return false;
  level = std::move(out);
  return true;
}

std::string checkpoint_dir_of(const EnumerateOptions& o) {
  if (!o.checkpoint_dir.empty()) return o.checkpoint_dir;
  if (const char* env = std::getenv("SPHFAM_CHECKPOINT_DIR")) return env;
  return {};
}

Level run_bfs(GroupKind kind, const RootSpace& rs, const EnumerateOptions& o) {
  const int r = rs.rank();
  const std::string dir = checkpoint_dir_of(o);
  if (!dir.empty()) std::filesystem::create_directories(dir);
  Level level;
  int k = 0;
  if (!dir.empty()) {
    for (int lvl = r; lvl >= 1; --lvl)
      if (load_level(checkpoint_path(dir, kind, lvl), kind, lvl, rs, level)) {
        k = lvl;
        report(o, kind.name() + ": resumed from level " + std::to_string(lvl) + " (" + std::to_string(level.size()) +
                      " keys)");
        break;
      }
  }
  if (k == 0) {
    std::unordered_map<std::string, Tuple> first;
    for (int l = 0; l < rs.line_count(); ++l) keep_in(first, bfs_key(rs, {l}, r == 1), {l});
    level = to_level(std::move(first));
    k = 1;
    if (!dir.empty()) save_level(checkpoint_path(dir, kind, 1), kind, 1, level);
    report(o, kind.name() + ": level 1, " + std::to_string(level.size()) + " keys");
  }
  while (k < r) {
    const bool final_level = k + 1 == r;
    level = o.jobs == 1 ? expand_serial(rs, level, final_level) : expand_parallel(rs, level, final_level, o.jobs);
    ++k;
    if (!dir.empty()) save_level(checkpoint_path(dir, kind, k), kind, k, level);
    report(o, kind.name() + ": level " + std::to_string(k) + ", " + std::to_string(level.size()) + " keys");
  }
  return level;
}

CanonicalCode code_of_key(const std::string& key, CodeScheme scheme) {
  std::vector<std::uint8_t> reading;
  for (char c : key) {
    if (c == ':') break;
    reading.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return code_from_reading(reading, scheme);
}

}  // namespace

EnumerationResult enumerate_families(GroupKind kind, const EnumerateOptions& options) {
  const RootSpace& rs = root_space(kind);
  EnumerationMode mode = options.mode;
  const double tuples = direct_tuple_count(kind);
  if (mode == EnumerationMode::Auto) mode = tuples <= 5e6 ? EnumerationMode::Direct : EnumerationMode::BFS;
  if (mode == EnumerationMode::Direct && tuples > kDirectTupleLimit && !options.allow_large_direct)
    throw GuardRailError("direct enumeration of " + kind.name() + " would visit ~" +
                         std::to_string(static_cast<long long>(tuples)) +
                         " tuples; use BFS mode or lift the guard explicitly");
  if (kind == GroupKind::E(8) && !options.long_running)
    throw GuardRailError("E8 enumeration is gated behind the long-running flag");
  if (rs.rank() > kMaxVertices) throw GuardRailError("rank above " + std::to_string(kMaxVertices));

  std::map<std::string, DirectEntry> found;
  if (mode == EnumerationMode::Direct) {
    DirectMap m = options.jobs == 1 ? direct_serial(kind, rs, options) : direct_parallel(kind, rs, options);
    found.insert(std::make_move_iterator(m.begin()), std::make_move_iterator(m.end()));
  } else {
    for (auto& [key, ids] : run_bfs(kind, rs, options)) found[key].witness = ids;
  }

  const CodeScheme scheme = default_scheme(kind);
  EnumerationResult result{kind, {}};
  for (auto& [key, entry] : found) {
    Family witness{kind, entry.witness};
    if (options.full_group_only && !generates_full_group(witness)) continue;
    FamilyRecord rec{code_of_key(key, scheme), key, std::move(witness), 1, {}};
    for (auto& [ek, t] : entry.embeddings) rec.embeddings.push_back(Family{kind, t});
    result.families.push_back(std::move(rec));
  }
  std::sort(result.families.begin(), result.families.end(), [](const FamilyRecord& a, const FamilyRecord& b) {
    if (a.code != b.code) return a.code < b.code;
    return a.key < b.key;
  });
  for (std::size_t i = 0; i < result.families.size();) {
    std::size_t j = i;
    while (j < result.families.size() && result.families[j].code == result.families[i].code) ++j;
    for (std::size_t t = i; t < j; ++t) result.families[t].multiplicity = static_cast<int>(j - i);
    i = j;
  }
  report(options, kind.name() + ": " + std::to_string(result.families.size()) + " families");
  return result;
}

FamilyCount count_families(GroupKind kind, const EnumerateOptions& options) {
  const auto r = enumerate_families(kind, options);
  return {r.distinct_codes().size(), r.families.size()};
}

}  // namespace sphfam
