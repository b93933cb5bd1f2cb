#include "sphfam/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "sphfam/enumerate.hpp"
#include "sphfam/error.hpp"
#include "sphfam/graphbij.hpp"
#include "sphfam/identify.hpp"
#include "sphfam/reference.hpp"
#include "sphfam/subprop.hpp"

namespace sphfam {

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kMaxBijectionSize = 8;

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct EnumerateArgs {
  std::string kind;
  std::string mode = "auto";
  bool all_subgroups = false;
  bool long_running = false;
  bool allow_large = false;
  int jobs = 0;
  std::string checkpoint_dir;
};

void add_enumeration_flags(CLI::App* cmd, EnumerateArgs& a) {
  cmd->add_option("kind", a.kind, "group kind, e.g. E6, H4, D5")->required();
  cmd->add_option("--mode", a.mode, "direct, bfs or auto");
  cmd->add_flag("--long-running", a.long_running, "allow the E8 enumeration");
  cmd->add_flag("--allow-large", a.allow_large, "lift the Direct-mode size guard");
  cmd->add_option("--jobs", a.jobs, "worker threads; 0 = all, 1 = serial path");
  cmd->add_option("--checkpoint-dir", a.checkpoint_dir, "per-level BFS checkpoints");
}

EnumerationResult run_enumeration(const EnumerateArgs& a) {
  EnumerateOptions o;
  o.mode = parse_mode(a.mode);
  o.full_group_only = !a.all_subgroups;
  o.long_running = a.long_running;
  o.allow_large_direct = a.allow_large;
  o.jobs = a.jobs;
  o.checkpoint_dir = a.checkpoint_dir;
  return enumerate_families(parse_group_kind(a.kind), o);
}

json code_json(const CanonicalCode& c) {
  const mpz_class v = c.value();
  if (v.fits_ulong_p()) return v.get_ui();
  return v.get_str();
}

json record_json(GroupKind kind, const FamilyRecord& f) {
  const RootSpace& rs = root_space(kind);
  json lines = json::array();
  for (int id : f.witness.line_ids) {
    json v = json::array();
    for (const auto& x : rs.line(id)) v.push_back(to_string(x));
    lines.push_back(std::move(v));
  }
  json angles = json::array();
  for (const auto& a : min_angle_sum_representative(f.witness)) angles.push_back(a.to_string());
  json r;
  r["ambient"] = kind.name();
  r["code"] = code_json(f.code);
  r["multiplicity"] = f.multiplicity;
  r["lines"] = std::move(lines);
  r["diagram"] = diagram_digits(diagram_of(f.witness));
  r["representative_angles"] = std::move(angles);
  return r;
}

int cmd_enumerate(const EnumerateArgs& a, const std::string& format, const std::string& out_path, std::ostream& out) {
  const EnumerationResult r = run_enumeration(a);
  std::string text;
  if (format == "codes") {
    text = r.codes_text();
  } else if (format == "json") {
    json all = json::array();
    for (const auto& f : r.families) all.push_back(record_json(r.kind, f));
    text = all.dump(2) + "\n";
  } else {
    throw ParseError("unknown format '" + format + "'");
  }
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + out_path);
    f << text;
  }
  return kExitOk;
}

ReferenceList load_reference(const std::string& spec) {
  const std::string prefix = "bundled:";
  if (spec.rfind(prefix, 0) == 0) return bundled_reference(spec.substr(prefix.size()));
  return parse_reference(read_file(spec), spec);
}

int cmd_verify(const EnumerateArgs& a, const std::string& reference, bool canonicalize, std::ostream& out) {
  const ReferenceList ref = load_reference(reference);
  const GroupKind kind = parse_group_kind(a.kind);
  if (ref.kind != kind) throw ParseError("reference is for " + ref.kind.name() + ", not " + kind.name());
  std::vector<mpz_class> expected = ref.effective_codes();
  if (canonicalize)
    for (auto& c : expected) c = recanonicalize(c, default_scheme(kind), kind.rank()).value();
  std::vector<mpz_class> computed;
  for (const auto& c : run_enumeration(a).distinct_codes()) computed.push_back(c.value());
  const CodeDiff d = diff_codes(computed, expected);
  if (d.empty()) {
    out << "OK " << kind.name() << ": " << computed.size() << " codes match " << ref.name << "\n";
    return kExitOk;
  }
  out << "--- " << ref.name << "\n+++ computed " << kind.name() << "\n";
  out << "@@ " << d.missing.size() << " missing, " << d.extra.size() << " extra @@\n";
  out << d.to_string();
  return kExitMismatch;
}

std::vector<std::string> matrix_tokens(const std::string& text, int& n) {
  std::istringstream in(text);
  if (!(in >> n) || n < 1 || n > kMaxVertices) throw ParseError("matrix must start with its size (1.." + std::to_string(kMaxVertices) + ")");
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (static_cast<int>(tokens.size()) != n * n)
    throw ParseError("expected " + std::to_string(n * n) + " entries, got " + std::to_string(tokens.size()));
  return tokens;
}

Angle parse_angle_token(const std::string& t) {
  const auto slash = t.find('/');
  if (slash == std::string::npos) throw ParseError("angle entries are k/l, got '" + t + "'");
  std::size_t used = 0;
  int k = 0, l = 0;
  try {
    k = std::stoi(t.substr(0, slash), &used);
    if (used != slash) throw ParseError("bad angle '" + t + "'");
    l = std::stoi(t.substr(slash + 1), &used);
    if (used != t.size() - slash - 1) throw ParseError("bad angle '" + t + "'");
  } catch (const std::logic_error&) {
    throw ParseError("bad angle '" + t + "'");
  }
  if (k <= 0 || l <= 0 || k >= l) throw ParseError("angle '" + t + "' is not strictly between 0 and pi");
  return Angle(k, l);
}

std::vector<std::vector<Angle>> angles_from_text(const std::string& text) {
  int n = 0;
  const auto tokens = matrix_tokens(text, n);
  std::vector<std::vector<Angle>> a(n, std::vector<Angle>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) a[i][j] = parse_angle_token(tokens[i * n + j]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a[i][j] != a[j][i]) throw ParseError("angle matrix is not symmetric");
  return a;
}

// Entries of a Gram matrix in Q(sqrt5), any positive scaling of the rows.
std::vector<std::vector<Angle>> angles_from_gram(const std::string& text) {
  int n = 0;
  const auto tokens = matrix_tokens(text, n);
  std::vector<std::vector<QScalar>> g(n, std::vector<QScalar>(n));
  for (int i = 0; i < n * n; ++i) g[i / n][i % n] = parse_qscalar(tokens[i]);
  for (int i = 0; i < n; ++i)
    if (g[i][i].sign() <= 0) throw ParseError("Gram diagonal must be positive");
  const QScalar r5 = QScalar::sqrt_d();
  const std::vector<std::pair<QScalar, std::pair<Angle, Angle>>> table{
      {QScalar(0), {Angle(1, 2), Angle(1, 2)}},
      {QScalar(Rational(1, 4)), {Angle(1, 3), Angle(2, 3)}},
      {QScalar(Rational(1, 2)), {Angle(1, 4), Angle(3, 4)}},
      {QScalar(Rational(3, 4)), {Angle(1, 6), Angle(5, 6)}},
      {(QScalar(3) + r5) / QScalar(8), {Angle(1, 5), Angle(4, 5)}},
      {(QScalar(3) - r5) / QScalar(8), {Angle(2, 5), Angle(3, 5)}},
  };
  std::vector<std::vector<Angle>> a(n, std::vector<Angle>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g[i][j] != g[j][i]) throw ParseError("Gram matrix is not symmetric");
      const QScalar c2 = g[i][j] * g[i][j] / (g[i][i] * g[j][j]);
      bool found = false;
      for (const auto& [value, pair] : table)
        if (value == c2) {
          // A positive entry means an obtuse dihedral angle.
          a[i][j] = g[i][j].sign() > 0 ? pair.second : pair.first;
          found = true;
        }
      if (!found) throw ParseError("Gram entry " + tokens[i * n + j] + " is not the cosine of a supported angle");
    }
  return a;
}

int cmd_classify(const std::string& angles_path, const std::string& gram_path, std::ostream& out) {
  if (angles_path.empty() == gram_path.empty()) throw ParseError("give exactly one of --angles and --gram");
  const auto angles = angles_path.empty() ? angles_from_gram(read_file(gram_path)) : angles_from_text(read_file(angles_path));
  out << classify_simplex(angles).to_string() << "\n";
  return kExitOk;
}

GroupKind bijection_kind(GraphClass cls, int n) {
  switch (cls) {
    case GraphClass::Tree:
      if (n < 1) throw GuardRailError("A(n) needs n >= 1");
      return GroupKind::A(n);
    case GraphClass::MarkedTree:
      if (n < 2) throw GuardRailError("B(n) needs n >= 2");
      return GroupKind::B(n);
    case GraphClass::Unicyclic:
      if (n < 4) throw GuardRailError("D(n) needs n >= 4");
      return GroupKind::D(n);
  }
  throw ParseError("unknown class");
}

int cmd_bijection(const std::string& cls_text, int n, std::ostream& out) {
  const GraphClass cls = parse_graph_class(cls_text);
  const GroupKind kind = bijection_kind(cls, n);
  if (n > kMaxBijectionSize) throw GuardRailError("bijection suite is limited to n <= " + std::to_string(kMaxBijectionSize));
  const int vertices = cls == GraphClass::Tree ? n + 1 : n;
  const std::vector<MultiGraph> graphs =
      cls == GraphClass::Unicyclic ? d_family_graphs(vertices) : enumerate_graphs(cls, vertices);
  const EnumerationResult families = enumerate_families(kind);

  std::set<std::string> enumerated_keys, graph_keys;
  for (const auto& f : families.families) enumerated_keys.insert(f.key);
  bool round_trip = true, duals = true;
  for (const auto& g : graphs) {
    const Family f = graph_to_family(g, cls);
    graph_keys.insert(family_key(f));
    round_trip = round_trip && isomorphic(family_to_graph(f), g);
    const auto back = reconstruct(dual_graph(g, cls), cls);
    duals = duals && back.size() == 1 && isomorphic(back.front(), g);
  }
  bool double_dual = true;
  if (cls == GraphClass::Tree && vertices >= 3)
    for (const auto& g : graphs) double_dual = double_dual && double_dual_check(g);
  const bool counts = graphs.size() == families.families.size();
  const bool onto = graph_keys == enumerated_keys;

  auto verdict = [](bool b) { return b ? "PASS" : "FAIL"; };
  out << "class " << to_string(cls) << ", " << kind.name() << "\n";
  if (cls == GraphClass::Unicyclic)
    out << "graphs: " << enumerate_graphs(cls, vertices).size() << " unicyclic, " << exceptional_pairs(vertices).size()
        << " exceptional pairs, " << graphs.size() << " kept\n";
  else
    out << "graphs: " << graphs.size() << "\n";
  out << "families: " << families.families.size() << "\n";
  out << "count " << graphs.size() << " = " << families.families.size() << ": " << verdict(counts) << "\n";
  out << "graph keys = family keys: " << verdict(onto) << "\n";
  out << "graph -> family -> graph: " << verdict(round_trip) << "\n";
  out << "dual -> reconstruct: " << verdict(duals) << "\n";
  if (cls == GraphClass::Tree) out << "double dual: " << verdict(double_dual) << "\n";
  const bool all = counts && onto && round_trip && duals && double_dual;
  out << verdict(all) << "\n";
  return all ? kExitOk : kExitMismatch;
}

int cmd_dot(const std::string& digits, const std::string& family, std::ostream& out) {
  if (digits.empty() == family.empty()) throw ParseError("give exactly one of --diagram and --family");
  std::string reading = digits;
  std::string name = "diagram";
  if (!family.empty()) {
    const std::string text = family.find('{') != std::string::npos ? family : read_file(family);
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad family record: ") + e.what());
    }
    if (j.is_array()) {
      if (j.size() != 1) throw ParseError("expected a single family record");
      j = j.front();
    }
    if (!j.is_object() || !j.contains("diagram") || !j["diagram"].is_string())
      throw ParseError("family record needs a \"diagram\" string");
    reading = j["diagram"].get<std::string>();
    if (j.contains("ambient") && j.contains("code"))
      name = j["ambient"].get<std::string>() + "_" + j["code"].dump();
  }
  out << to_dot(diagram_from_digits(reading), name);
  return kExitOk;
}

int cmd_subgroup(const std::string& kind_text, int jobs, bool allow_large, std::ostream& out) {
  SubgroupSweepOptions o;
  o.jobs = jobs;
  o.allow_large = allow_large;
  o.max_examples = 5;
  const auto r = theorem_subgr_equivalence(parse_group_kind(kind_text), o);
  out << r.kind.name() << ": " << r.assignments << " labeled diagrams, " << r.realizable << " realizable indecomposable\n";
  out << "subgroup property: " << r.with_property << "\n";
  out << "from families generating " << r.kind.name() << ": " << r.from_families << "\n";
  out << "counterexamples: " << r.counterexamples << "\n";
  for (const auto& e : r.examples) {
    out << "  angles";
    for (int i = 0; i < e.n(); ++i)
      for (int j = i + 1; j < e.n(); ++j) out << " " << e.angle(i, j).to_string();
    out << "  profile " << vertex_profile(e).to_string() << "\n";
  }
  out << "containment reading mismatches: " << r.subgroup_reading_mismatches << "\n";
  return r.holds() ? kExitOk : kExitMismatch;
}

int cmd_fifths(int jobs, std::ostream& out) {
  const Prop5Report r = prop5_report(jobs);
  out << "tetrahedra with a k/5 angle: " << r.realizable << " realizable labelings\n";
  out << "subgroup property for H4: " << r.with_property << "\n";
  out << "non-discrete among them: " << r.non_discrete << "\n";
  out << "excluded diagrams (base-4 codes): " << r.excluded.size() << "\n";
  for (const auto& d : r.excluded) out << "  " << canonical_code(d, CodeScheme::Base4).to_string() << "\n";
  out << "non-discrete labelings sharing an H4 family diagram: " << r.shared_with_h4.size() << "\n";
  for (const auto& d : r.shared_with_h4) out << "  " << canonical_code(d, CodeScheme::Base4).to_string() << "\n";
  return kExitOk;
}

void print_version(std::ostream& out) {
  out << "sphfam " << kVersion << "\n";
  for (const auto& r : bundled_references()) {
    const std::size_t count = r.triangles.empty() ? r.codes.size() : r.triangles.size();
    out << r.name << " " << r.kind.name() << " " << to_string(r.provenance) << " " << count << " fnv1a64:"
        << content_hash(r.text) << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Families of spherical simplices generating finite reflection groups"};
  app.name("sphfam");
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print version and bundled data hashes");

  EnumerateArgs en;
  std::string format = "codes", out_path;
  auto* enumerate = app.add_subcommand("enumerate", "list the families generating a group");
  add_enumeration_flags(enumerate, en);
  enumerate->add_flag("--all-subgroup-families", en.all_subgroups, "keep families generating proper subgroups");
  enumerate->add_option("--format", format, "codes or json");
  enumerate->add_option("--out", out_path, "write to a file instead of stdout");

  EnumerateArgs ve;
  std::string reference;
  bool canonicalize = false;
  auto* verify = app.add_subcommand("verify", "compare the enumeration with a reference list");
  add_enumeration_flags(verify, ve);
  verify->add_option("--reference", reference, "list file, or bundled:<name>")->required();
  verify->add_flag("--canonicalize-reference", canonicalize, "replace each reference code by its minimal reading first");

  std::string angles_path, gram_path;
  auto* classify = app.add_subcommand("classify", "decide whether a simplex generates a discrete group");
  classify->add_option("--angles", angles_path, "file: n, then n*n entries k/l (diagonal ignored)");
  classify->add_option("--gram", gram_path, "file: n, then n*n Gram entries in Q(sqrt5)");

  std::string cls;
  int size = 0;
  auto* bijection = app.add_subcommand("bijection", "check the graph-family bijection for A, B or D");
  bijection->add_option("class", cls, "A, B or D")->required();
  bijection->add_option("n", size, "rank")->required();

  std::string digits, family;
  auto* dot = app.add_subcommand("dot", "render a family diagram as DOT");
  dot->add_option("--diagram", digits, "upper-triangle EdgeClass digits");
  dot->add_option("--family", family, "JSON family record (file or inline)");

  std::string sub_kind;
  int sub_jobs = 0;
  bool sub_large = false;
  auto* subgroup = app.add_subcommand("subgroup", "sweep labeled diagrams against the subgroup property");
  subgroup->add_option("kind", sub_kind, "crystallographic kind of rank >= 4")->required();
  subgroup->add_option("--jobs", sub_jobs, "worker threads");
  subgroup->add_flag("--allow-large", sub_large, "lift the size guard");

  int prop_jobs = 0;
  auto* fifths = app.add_subcommand("fifths", "tetrahedra with a k/5 angle: non-discrete diagrams with the H4 property");
  fifths->add_option("--jobs", prop_jobs, "worker threads");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (version) {
      print_version(out);
      return kExitOk;
    }
    if (*enumerate) return cmd_enumerate(en, format, out_path, out);
    if (*verify) return cmd_verify(ve, reference, canonicalize, out);
    if (*classify) return cmd_classify(angles_path, gram_path, out);
    if (*bijection) return cmd_bijection(cls, size, out);
    if (*dot) return cmd_dot(digits, family, out);
    if (*subgroup) return cmd_subgroup(sub_kind, sub_jobs, sub_large, out);
    if (*fifths) return cmd_fifths(prop_jobs, out);
    out << app.help();
    return kExitInput;
  } catch (const GuardRailError& e) {
    err << "guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace sphfam
