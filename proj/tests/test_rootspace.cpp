#include <doctest.h>

#include <random>
#include <set>

#include "sphfam/modp.hpp"
#include "sphfam/rootspace.hpp"

using namespace sphfam;

namespace {

Vector h(int dim, std::initializer_list<std::pair<int, int>> entries) {
  Vector v(dim);
  for (auto [i, c] : entries) v[i] = c;
  return v;
}

std::vector<GroupKind> small_kinds() {
  return {GroupKind::A(1), GroupKind::A(2), GroupKind::A(3), GroupKind::A(4), GroupKind::B(2),
          GroupKind::B(3), GroupKind::B(4), GroupKind::D(4), GroupKind::D(5), GroupKind::F4(),
          GroupKind::H(3), GroupKind::H(4)};
}

std::size_t expected_roots(GroupKind k) {
  const std::size_t n = k.param;
  switch (k.tag) {
    case KindTag::A: return n * (n + 1);
    case KindTag::B: return 2 * n * n;
    case KindTag::D: return 2 * n * (n - 1);
    case KindTag::E: return n == 6 ? 72 : (n == 7 ? 126 : 240);
    case KindTag::F: return 48;
    case KindTag::H: return n == 3 ? 30 : 120;
    default: return 0;
  }
}

}  // namespace

TEST_CASE("root counts") {
  auto kinds = small_kinds();
  for (int n : {6, 7, 8}) kinds.push_back(GroupKind::E(n));
  kinds.push_back(GroupKind::A(7));
  kinds.push_back(GroupKind::B(6));
  kinds.push_back(GroupKind::D(7));
  for (auto k : kinds) {
    CAPTURE(k.name());
    const RootSpace& rs = root_space(k);
    CHECK(rs.roots().size() == expected_roots(k));
    CHECK(static_cast<std::size_t>(rs.line_count()) * 2 == rs.roots().size());
    CHECK(rank_of(rs.lines()) == k.rank());
  }
}

TEST_CASE("roots are closed under reflection") {
  for (auto k : small_kinds()) {
    CAPTURE(k.name());
    const RootSpace& rs = root_space(k);
    std::set<std::string> roots;
    for (const auto& r : rs.roots()) roots.insert(to_string(r));
    for (const auto& r : rs.roots()) {
      Vector neg = r;
      for (auto& x : neg) x = -x;
      CHECK(roots.count(to_string(neg)));
    }
    bool closed = true;
    for (const auto& a : rs.roots())
      for (const auto& b : rs.roots()) closed = closed && roots.count(to_string(reflect(b, a)));
    CHECK(closed);
  }
  // Sampled for the large systems.
  std::mt19937_64 rng(3);
  for (int n : {7, 8}) {
    const RootSpace& rs = root_space(GroupKind::E(n));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(rs.roots().size()) - 1);
    for (int t = 0; t < 2000; ++t) {
      const auto& a = rs.roots()[pick(rng)];
      const auto& b = rs.roots()[pick(rng)];
      CHECK(rs.find_line(reflect(b, a)) >= 0);
    }
  }
}

TEST_CASE("reflection tables match direct computation") {
  for (auto k : {GroupKind::B(3), GroupKind::H(3), GroupKind::F4()}) {
    const RootSpace& rs = root_space(k);
    for (int i = 0; i < rs.line_count(); ++i)
      for (int j = 0; j < rs.line_count(); ++j) {
        const Vector img = reflect(rs.line(j), rs.line(i));
        Vector expect = rs.line(rs.reflected_line(i, j));
        if (rs.reflected_sign(i, j) < 0)
          for (auto& x : expect) x = -x;
        CHECK(img == expect);
      }
  }
}

TEST_CASE("negation of roots and canonical line signs") {
  const RootSpace& rs = root_space(GroupKind::H(4));
  for (const auto& l : rs.lines()) {
    int first = 0;
    while (l[first].is_zero()) ++first;
    CHECK(l[first].sign() > 0);
  }
}

TEST_CASE("reflect examples") {
  CHECK(reflect(h(4, {{1, 1}, {2, -1}}), h(4, {{2, 1}, {3, -1}})) == h(4, {{1, 1}, {3, -1}}));
  CHECK(reflect(h(2, {{0, 1}, {1, -1}}), h(2, {{0, 1}})) == h(2, {{0, -1}, {1, -1}}));
  CHECK_THROWS(reflect(h(2, {{0, 1}}), h(2, {})));
  std::mt19937_64 rng(5);
  const RootSpace& rs = root_space(GroupKind::H(4));
  std::uniform_int_distribution<int> pick(0, rs.line_count() - 1);
  for (int t = 0; t < 100; ++t) {
    const auto& v = rs.line(pick(rng));
    const auto& r = rs.line(pick(rng));
    CHECK(reflect(reflect(v, r), r) == v);
  }
}

TEST_CASE("angle_class examples") {
  CHECK(angle_class(h(4, {{1, 1}, {2, -1}}), h(4, {{2, 1}, {3, -1}})) == PairClass{EdgeClass::K3, -1});
  CHECK(angle_class(h(2, {{0, 1}}), h(2, {{0, 1}, {1, -1}})) == PairClass{EdgeClass::K4, 1});
  CHECK(angle_class(h(4, {{0, 1}, {1, -1}}), h(4, {{2, 1}, {3, -1}})).cls == EdgeClass::Orth);
  CHECK_THROWS(angle_class(h(2, {{0, 1}}), h(2, {{0, 2}})));
  CHECK_THROWS(angle_class(h(2, {{0, 1}}), h(2, {{0, 2}, {1, 1}})));
}

TEST_CASE("edge classes per system") {
  using E = EdgeClass;
  auto classes = [](GroupKind k) {
    std::set<E> out;
    const RootSpace& rs = root_space(k);
    for (int i = 0; i < rs.line_count(); ++i)
      for (int j = i + 1; j < rs.line_count(); ++j) out.insert(rs.edge_class(i, j));
    return out;
  };
  CHECK(classes(GroupKind::A(4)) == std::set<E>{E::Orth, E::K3});
  CHECK(classes(GroupKind::D(5)) == std::set<E>{E::Orth, E::K3});
  CHECK(classes(GroupKind::E(8)) == std::set<E>{E::Orth, E::K3});
  CHECK(classes(GroupKind::B(3)) == std::set<E>{E::Orth, E::K3, E::K4});
  CHECK(classes(GroupKind::F4()) == std::set<E>{E::Orth, E::K3, E::K4});
  CHECK(classes(GroupKind::H(3)) == std::set<E>{E::Orth, E::K3, E::K5, E::K5p});
  CHECK(classes(GroupKind::H(4)) == std::set<E>{E::Orth, E::K3, E::K5, E::K5p});
}

TEST_CASE("rank and indecomposability examples") {
  const Vector a = h(4, {{0, 1}, {1, -1}}), b = h(4, {{1, 1}, {2, -1}}), c = h(4, {{0, 1}, {2, -1}}),
               d = h(4, {{2, 1}, {3, -1}});
  CHECK(rank_of(std::vector<Vector>{a, b, c}) == 2);
  CHECK(rank_of(std::vector<Vector>{a, b, d}) == 3);
  CHECK(rank_of(std::vector<Vector>{}) == 0);
  CHECK_FALSE(is_indecomposable(std::vector<Vector>{a, d}));
  CHECK(is_indecomposable(std::vector<Vector>{a, b}));
  CHECK_FALSE(is_indecomposable(std::vector<Vector>{h(4, {{0, 1}}), a, d, h(4, {{2, 1}, {3, 1}})}));
}

TEST_CASE("modular rank agrees with exact rank") {
  std::mt19937_64 rng(17);
  for (auto k : {GroupKind::H(4), GroupKind::E(8), GroupKind::F4(), GroupKind::E(7)}) {
    const RootSpace& rs = root_space(k);
    std::uniform_int_distribution<int> pick(0, rs.line_count() - 1);
    for (int t = 0; t < 300; ++t) {
      const int size = 1 + static_cast<int>(rng() % (k.rank() + 1));
      std::vector<int> ids;
      for (int s = 0; s < size; ++s) ids.push_back(pick(rng));
      modp::EchelonBasis basis(rs.ambient_dim());
      for (int id : ids) basis.try_add(rs.modp_line(id));
      CHECK(basis.size() == rank_of(rs.vectors(ids)));
    }
  }
}

TEST_CASE("kind parsing and validation") {
  CHECK(parse_group_kind("E7") == GroupKind::E(7));
  CHECK(parse_group_kind("G2(5)") == GroupKind::G2(5));
  CHECK(parse_group_kind("F4").name() == "F4");
  CHECK_THROWS_AS(parse_group_kind("D3"), ParseError);
  CHECK_THROWS_AS(parse_group_kind("E9"), ParseError);
  CHECK_THROWS_AS(parse_group_kind("X2"), ParseError);
  CHECK_THROWS_AS(build_root_space(GroupKind::G2(5)), UnsupportedKind);
  CHECK_THROWS_AS(GroupKind::B(1), UnsupportedKind);
}
