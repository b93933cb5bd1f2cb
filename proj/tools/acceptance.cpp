// Runs the ten acceptance checks and prints one PASS/FAIL line for each,
// followed by indented detail lines. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "sphfam/cli.hpp"
#include "sphfam/enumerate.hpp"
#include "sphfam/reference.hpp"
#include "sphfam/subprop.hpp"

using namespace sphfam;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str() + err.str()};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(1);
  o << std::fixed << s << " s";
  return o.str();
}

std::vector<mpz_class> codes_of(const EnumerationResult& r) {
  std::vector<mpz_class> v;
  for (const auto& c : r.distinct_codes()) v.push_back(c.value());
  return v;
}

EnumerationResult enumerate(GroupKind kind, EnumerationMode mode = EnumerationMode::Auto) {
  EnumerateOptions o;
  o.mode = mode;
  o.long_running = kind == GroupKind::E(8);
  return enumerate_families(kind, o);
}

struct Report {
  int failures = 0;
  void line(int n, bool pass, const std::string& title, const std::vector<std::string>& details) {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << n << ". " << title << "\n";
    for (const auto& d : details) std::cout << "        " << d << "\n";
    std::cout.flush();
    failures += !pass;
  }
};

// Literal list comparison plus the diagram-level comparison after re-reading
// each printed code as a diagram.
std::vector<std::string> list_details(const std::vector<mpz_class>& computed, const ReferenceList& ref, GroupKind kind) {
  std::vector<std::string> d;
  const CodeDiff literal = diff_codes(computed, ref.codes);
  d.push_back("computed " + std::to_string(computed.size()) + " codes, printed list " +
              std::to_string(ref.codes.size()) + "; literal diff " + std::to_string(literal.missing.size()) +
              " missing, " + std::to_string(literal.extra.size()) + " extra");
  std::set<mpz_class> canon;
  for (const auto& c : ref.codes)
    canon.insert(recanonicalize(c, default_scheme(kind), kind.rank() + 1).value());
  const CodeDiff diagrams = diff_codes(computed, {canon.begin(), canon.end()});
  d.push_back("after re-canonicalizing the printed codes: " + std::to_string(diagrams.missing.size()) + " missing, " +
              std::to_string(diagrams.extra.size()) + " extra");
  return d;
}

void criterion_1(Report& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto codes = codes_of(enumerate(GroupKind::E(6)));
  const double t = seconds_since(t0);
  const auto& ref = bundled_reference("e6_printed");
  auto d = list_details(codes, ref, GroupKind::E(6));
  d.push_back("runtime " + fmt_seconds(t));
  rep.line(1, codes == ref.codes && t < 60, "E6: the 32 printed codes", d);
}

void criterion_2(Report& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto codes = codes_of(enumerate(GroupKind::E(7), EnumerationMode::BFS));
  const double t = seconds_since(t0);
  const auto& ref = bundled_reference("e7_printed");
  auto d = list_details(codes, ref, GroupKind::E(7));
  d.insert(d.begin(), "expected 223 codes");
  d.push_back("runtime " + fmt_seconds(t));
  rep.line(2, codes.size() == 223 && codes == ref.codes && t < 3600, "E7: 223 printed codes", d);
}

void criterion_3(Report& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = enumerate(GroupKind::H(4));
  const double t = seconds_since(t0);
  const auto codes = codes_of(r);
  const auto& ref = bundled_reference("h4_printed");
  const CodeDiff diff = diff_codes(codes, ref.codes);
  bool multiplicities = true;
  std::string doubles;
  for (const auto& f : r.families) {
    const bool special = f.code.value() == 348 || f.code.value() == 500;
    multiplicities = multiplicities && f.multiplicity == (special ? 2 : 1);
    if (special) doubles += " " + f.code.to_string() + "x" + std::to_string(f.multiplicity);
  }
  std::string missing;
  for (const auto& c : diff.missing) missing += " " + c.get_str();
  rep.line(3, codes.size() == 78 && diff.empty() && multiplicities && t < 60, "H4: 78 printed codes, 348 and 500 twice",
           {"computed " + std::to_string(codes.size()) + " codes, printed " + std::to_string(ref.codes.size()),
            "printed but not generating H4:" + missing, "multiplicities:" + doubles,
            "runtime " + fmt_seconds(t)});
}

void criterion_4(Report& rep) {
  const auto r = enumerate(GroupKind::H(3));
  std::multiset<std::string> computed, printed;
  for (const auto& f : r.families) {
    std::string s;
    for (const auto& a : min_angle_sum_representative(f.witness)) s += a.to_string() + " ";
    computed.insert(s);
  }
  for (auto t : bundled_reference("h3_triangles_printed").triangles) {
    std::sort(t.begin(), t.end());
    std::string s;
    for (const auto& a : t) s += a.to_string() + " ";
    printed.insert(s);
  }
  rep.line(4, r.families.size() == 10 && computed == printed, "H3: the 10 triangles of the table",
           {std::to_string(r.families.size()) + " families, " + std::to_string(printed.size()) +
            " printed triangles, representatives " + (computed == printed ? "equal" : "differ")});
}

void criterion_5(Report& rep) {
  const auto dir = std::filesystem::temp_directory_path() / "sphfam-acceptance-e8";
  std::filesystem::remove_all(dir);
  EnumerateOptions o;
  o.mode = EnumerationMode::BFS;
  o.long_running = true;
  o.checkpoint_dir = dir.string();
  const auto t0 = std::chrono::steady_clock::now();
  const auto first = enumerate_families(GroupKind::E(8), o);
  const double t = seconds_since(t0);

  std::filesystem::remove(checkpoint_path(o.checkpoint_dir, GroupKind::E(8), 8));
  std::vector<std::string> log;
  o.progress = [&](std::string_view s) { log.emplace_back(s); };
  const auto resumed = enumerate_families(GroupKind::E(8), o);
  std::filesystem::remove_all(dir);
  const bool resumed_ok = !log.empty() && log.front().find("resumed from level 7") != std::string::npos;
  const bool same = resumed.codes_text() == first.codes_text();
  const auto n = first.distinct_codes().size();
  const bool guarded = cli({"enumerate", "E8"}).code == kExitGuard;
  rep.line(5, n == 1242 && resumed_ok && same && guarded, "E8: 1242 codes, checkpoint and resume",
           {std::to_string(n) + " distinct codes in " + fmt_seconds(t),
            std::string("resume after deleting the last level: ") + (resumed_ok ? "resumed from level 7" : "no resume") +
                ", output " + (same ? "identical" : "differs"),
            std::string("without --long-running: ") + (guarded ? "refused" : "not refused")});
}

void criterion_6(Report& rep) {
  const auto r = prop5_report(0);
  bool k5 = true;
  for (const auto& d : r.excluded) {
    bool has = false;
    for (int i = 0; i < d.n; ++i)
      for (int j = i + 1; j < d.n; ++j) has = has || d.at(i, j) == EdgeClass::K5 || d.at(i, j) == EdgeClass::K5p;
    k5 = k5 && has;
  }
  std::set<std::string> h4;
  for (const auto& f : enumerate(GroupKind::H(4)).families) h4.insert(canonical_code(diagram_of(f.witness), CodeScheme::Base4).to_string());
  bool disjoint = true;
  std::string codes;
  for (const auto& d : r.excluded) {
    const std::string c = canonical_code(d, CodeScheme::Base4).to_string();
    disjoint = disjoint && !h4.count(c);
    codes += " " + c;
  }
  std::string shared;
  for (const auto& d : r.shared_with_h4) shared += " " + canonical_code(d, CodeScheme::Base4).to_string();
  rep.line(6, r.excluded.size() == 17 && k5 && disjoint, "k*pi/5 tetrahedra: 17 excluded diagrams",
           {"computed " + std::to_string(r.excluded.size()) + " diagrams:" + codes,
            std::string("every member has a K5 edge: ") + (k5 ? "yes" : "no") +
                ", disjoint from H4 family diagrams: " + (disjoint ? "yes" : "no"),
            "non-discrete labelings of H4 family diagrams (not counted):" + shared});
}

void criterion_7(Report& rep) {
  bool ok = true;
  std::vector<std::string> d;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto kind : {GroupKind::A(4), GroupKind::B(4), GroupKind::D(4), GroupKind::F4(), GroupKind::A(5),
                          GroupKind::B(5), GroupKind::D(5)}) {
    const auto r = theorem_subgr_equivalence(kind);
    ok = ok && r.holds();
    std::string line = kind.name() + ": " + std::to_string(r.realizable) + " realizable, " +
                       std::to_string(r.with_property) + " with the property, " + std::to_string(r.from_families) +
                       " from families, " + std::to_string(r.counterexamples) + " counterexamples";
    if (!r.examples.empty()) line += " (e.g. " + vertex_profile(r.examples.front()).to_string() + ")";
    d.push_back(line);
  }
  const double t = seconds_since(t0);
  d.push_back("runtime " + fmt_seconds(t));
  rep.line(7, ok && t < 600, "subgroup property equivalence", d);
}

void criterion_8(Report& rep) {
  bool ok = true;
  std::vector<std::string> d;
  auto run = [&](const std::string& cls, int lo, int hi) {
    std::string line = cls + ":";
    for (int n = lo; n <= hi; ++n) {
      const Run r = cli({"bijection", cls, std::to_string(n)});
      const bool pass = r.code == kExitOk;
      ok = ok && pass;
      const auto at = r.out.find("count ");
      line += " " + cls + std::to_string(n) + " [" + r.out.substr(at + 6, r.out.find(':', at) - at - 6) + "]" +
              (pass ? "" : " FAIL");
    }
    d.push_back(line);
  };
  run("A", 1, 6);
  run("B", 2, 5);
  run("D", 4, 5);
  rep.line(8, ok, "graph bijections", d);
}

void criterion_9(Report& rep) {
  std::vector<GroupKind> kinds{GroupKind::E(6), GroupKind::F4(), GroupKind::H(3), GroupKind::H(4),
                               GroupKind::D(4), GroupKind::D(5)};
  for (int n = 1; n <= 5; ++n) kinds.push_back(GroupKind::A(n));
  for (int n = 2; n <= 4; ++n) kinds.push_back(GroupKind::B(n));
  bool ok = true;
  std::string names;
  for (const auto kind : kinds) {
    EnumerateOptions o;
    o.allow_large_direct = true;
    o.mode = EnumerationMode::Direct;
    const std::string direct = enumerate_families(kind, o).codes_text();
    o.mode = EnumerationMode::BFS;
    const bool same = enumerate_families(kind, o).codes_text() == direct;
    ok = ok && same;
    names += " " + kind.name() + (same ? "" : "(differs)");
  }
  rep.line(9, ok, "Direct and BFS agree", {"kinds:" + names});
}

void criterion_10(Report& rep) {
  const std::vector<std::vector<std::string>> commands{
      {"enumerate", "E6"},
      {"enumerate", "E7", "--format", "json"},
      {"enumerate", "H4", "--format", "json"},
      {"enumerate", "F4", "--mode", "direct", "--format", "json"},
      {"enumerate", "D5", "--all-subgroup-families"},
      {"subgroup", "B4"},
      {"subgroup", "D5"},
      {"fifths"},
      {"bijection", "D", "5"},
  };
  bool ok = true;
  std::vector<std::string> d;
  for (const auto& c : commands) {
    const std::string first = cli(c).out;
    bool same = cli(c).out == first;
    for (const std::string jobs : {"1", "2", "4"}) {
      auto with = c;
      if (c.front() == "bijection") break;
      with.insert(with.end(), {"--jobs", jobs});
      same = same && cli(with).out == first;
    }
    ok = ok && same;
    std::string name;
    for (const auto& a : c) name += a + " ";
    if (!same) d.push_back("differs: " + name);
  }
  d.push_back(std::to_string(commands.size()) + " commands, repeated and with 1, 2 and 4 workers");
  rep.line(10, ok, "deterministic output", d);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  const std::vector<void (*)(Report&)> criteria{criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                                criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  Report rep;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(static_cast<int>(i + 1))) continue;
    try {
      criteria[i](rep);
    } catch (const std::exception& e) {
      rep.line(static_cast<int>(i + 1), false, "error", {e.what()});
    }
  }
  return rep.failures;
}
