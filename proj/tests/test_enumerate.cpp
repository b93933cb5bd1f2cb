#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "sphfam/enumerate.hpp"
#include "sphfam/error.hpp"
#include "sphfam/graphbij.hpp"
#include "sphfam/identify.hpp"

using namespace sphfam;

namespace {

EnumerationResult run(GroupKind kind, EnumerationMode mode, int jobs = 0, bool full = true) {
  EnumerateOptions o;
  o.mode = mode;
  o.jobs = jobs;
  o.full_group_only = full;
  o.long_running = kind == GroupKind::E(8);
  return enumerate_families(kind, o);
}

std::string witnesses(const EnumerationResult& r) {
  std::string s;
  for (const auto& f : r.families) {
    s += f.key + " " + f.code.to_string() + " " + std::to_string(f.multiplicity);
    for (int id : f.witness.line_ids) s += " " + std::to_string(id);
    s += "\n";
  }
  return s;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("small counts") {
  CHECK(run(GroupKind::A(3), EnumerationMode::Direct).families.size() == 2);
  CHECK(run(GroupKind::A(4), EnumerationMode::Direct).families.size() == 3);
  CHECK(run(GroupKind::A(6), EnumerationMode::BFS).families.size() == 11);
  CHECK(run(GroupKind::E(6), EnumerationMode::BFS).distinct_codes().size() == 32);
  CHECK(run(GroupKind::E(7), EnumerationMode::BFS).distinct_codes().size() == 233);
  const auto h3 = run(GroupKind::H(3), EnumerationMode::Direct);
  CHECK(h3.codes_text() == "6\n7\n11\n22\n23\n26\n27\n31\n42\n63\n");
  CHECK(run(GroupKind::F4(), EnumerationMode::Direct).codes_text() == "38\n44\n156\n158\n484\n");
}

TEST_CASE("Direct and BFS agree") {
  std::vector<GroupKind> kinds{GroupKind::E(6), GroupKind::F4(), GroupKind::H(3), GroupKind::H(4),
                               GroupKind::D(4), GroupKind::D(5)};
  for (int n = 1; n <= 5; ++n) kinds.push_back(GroupKind::A(n));
  for (int n = 2; n <= 4; ++n) kinds.push_back(GroupKind::B(n));
  for (const auto& k : kinds) {
    CAPTURE(k.name());
    const auto d = run(k, EnumerationMode::Direct);
    const auto b = run(k, EnumerationMode::BFS);
    CHECK(d.codes_text() == b.codes_text());
    REQUIRE(d.families.size() == b.families.size());
    for (std::size_t i = 0; i < d.families.size(); ++i) {
      CHECK(d.families[i].key == b.families[i].key);
      CHECK(d.families[i].multiplicity == b.families[i].multiplicity);
    }
  }
}

TEST_CASE("serial and parallel paths agree") {
  for (const auto& k : {GroupKind::F4(), GroupKind::H(4), GroupKind::D(5)}) {
    CAPTURE(k.name());
    for (auto mode : {EnumerationMode::Direct, EnumerationMode::BFS}) {
      const std::string serial = witnesses(run(k, mode, 1));
      CHECK(witnesses(run(k, mode, 2)) == serial);
      CHECK(witnesses(run(k, mode, 4)) == serial);
      CHECK(witnesses(run(k, mode, 0)) == serial);
    }
  }
}

TEST_CASE("repeated runs are identical") {
  const auto a = run(GroupKind::E(6), EnumerationMode::BFS);
  const auto b = run(GroupKind::E(6), EnumerationMode::BFS);
  CHECK(witnesses(a) == witnesses(b));
}

TEST_CASE("every family generates the ambient group") {
  for (const auto& k : {GroupKind::F4(), GroupKind::H(4), GroupKind::E(6), GroupKind::B(4)}) {
    for (const auto& f : run(k, EnumerationMode::Auto).families) {
      CHECK(generates_full_group(f.witness));
      CHECK(family_key(f.witness) == f.key);
      CHECK(canonical_code(diagram_of(f.witness), default_scheme(k)) == f.code);
    }
  }
}

TEST_CASE("subgroup families are kept on request") {
  const auto full = run(GroupKind::H(4), EnumerationMode::Direct, 0, true);
  const auto all = run(GroupKind::H(4), EnumerationMode::Direct, 0, false);
  CHECK(all.families.size() > full.families.size());
  std::set<std::string> all_keys;
  for (const auto& f : all.families) all_keys.insert(f.key);
  for (const auto& f : full.families) CHECK(all_keys.count(f.key) == 1);
  // The A4 simple system inside H4 is one of the extra families.
  bool has_a4 = false;
  for (const auto& f : all.families)
    if (coxeter_type(f.witness.line_ids, root_space(f.witness.ambient)).to_string() == "A4") has_a4 = true;
  CHECK(has_a4);
}

TEST_CASE("D4 families with two embeddings") {
  EnumerateOptions o;
  o.mode = EnumerationMode::Direct;
  o.embedding_key = embedding_key;
  const auto r = enumerate_families(GroupKind::D(4), o);
  REQUIRE(r.families.size() == 3);
  int doubled = 0;
  for (const auto& f : r.families) {
    CHECK(f.multiplicity == 1);
    if (f.embeddings.size() == 2) {
      ++doubled;
      const MultiGraph a = family_to_graph(f.embeddings[0]);
      const MultiGraph b = family_to_graph(f.embeddings[1]);
      CHECK_FALSE(isomorphic(a, b));
      CHECK(family_key(f.embeddings[0]) == family_key(f.embeddings[1]));
    } else {
      CHECK(f.embeddings.size() == 1);
    }
  }
  CHECK(doubled == 2);
  // One of them is the 4-cycle diagram.
  bool cycle = false;
  for (const auto& f : r.families)
    if (f.embeddings.size() == 2 && diagram_digits(diagram_of(f.witness)).find('0') != std::string::npos) {
      const FamilyDiagram d = diagram_of(f.witness);
      int edges = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) edges += d.at(i, j) != EdgeClass::Orth;
      cycle = cycle || edges == 4;
    }
  CHECK(cycle);
}

TEST_CASE("guard rails") {
  EnumerateOptions o;
  o.mode = EnumerationMode::Direct;
  CHECK_THROWS_AS(enumerate_families(GroupKind::E(7), o), GuardRailError);
  o.mode = EnumerationMode::BFS;
  CHECK_THROWS_AS(enumerate_families(GroupKind::E(8), o), GuardRailError);
  CHECK_THROWS_AS(parse_mode("fast"), ParseError);
  CHECK(parse_mode("bfs") == EnumerationMode::BFS);
  CHECK(direct_tuple_count(GroupKind::A(3)) == doctest::Approx(20));
}

TEST_CASE("BFS checkpoints resume") {
  TempDir dir("sphfam-ckpt-test");
  EnumerateOptions o;
  o.mode = EnumerationMode::BFS;
  o.checkpoint_dir = dir.path.string();
  const auto first = enumerate_families(GroupKind::E(7), o);
  for (int k = 1; k <= 7; ++k) CHECK(std::filesystem::exists(checkpoint_path(o.checkpoint_dir, GroupKind::E(7), k)));

  std::filesystem::remove(checkpoint_path(o.checkpoint_dir, GroupKind::E(7), 7));
  std::vector<std::string> log;
  o.progress = [&](std::string_view s) { log.emplace_back(s); };
  const auto resumed = enumerate_families(GroupKind::E(7), o);
  REQUIRE_FALSE(log.empty());
  CHECK(log.front().find("resumed from level 6") != std::string::npos);
  CHECK(witnesses(resumed) == witnesses(first));

  // A damaged file is skipped in favour of the level below it.
  { std::ofstream(checkpoint_path(o.checkpoint_dir, GroupKind::E(7), 7)) << "garbage\n"; }
  log.clear();
  const auto again = enumerate_families(GroupKind::E(7), o);
  CHECK(log.front().find("resumed from level 6") != std::string::npos);
  CHECK(witnesses(again) == witnesses(first));
}
