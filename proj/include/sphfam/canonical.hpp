#pragma once

// Lexicographically minimal reading of a symmetric digit matrix.
//
// The reading of an ordering pi is the strict upper triangle, row by row:
// d(pi0,pi1) d(pi0,pi2) ... d(pi0,pi_{n-1}) d(pi1,pi2) ... d(pi_{n-2},pi_{n-1}).

#include <array>
#include <cstdint>
#include <vector>

namespace sphfam {

constexpr int kMaxVertices = 16;

struct DigitMatrix {
  int n = 0;
  std::array<std::uint8_t, kMaxVertices * kMaxVertices> d{};

  explicit DigitMatrix(int size = 0);
  std::uint8_t at(int i, int j) const { return d[i * kMaxVertices + j]; }
  void set(int i, int j, std::uint8_t v) {
    d[i * kMaxVertices + j] = v;
    d[j * kMaxVertices + i] = v;
  }
  // Reading of the given ordering (order[pos] = vertex).
  std::vector<std::uint8_t> reading(const std::vector<int>& order) const;
};

struct CanonicalForm {
  std::vector<std::uint8_t> digits;
  std::vector<int> order;  // one minimizing ordering
};

CanonicalForm canonical_form(const DigitMatrix& m);

// Every ordering attaining the minimum (one per automorphism of the matrix).
std::vector<std::vector<int>> optimal_orderings(const DigitMatrix& m, std::vector<std::uint8_t>* digits = nullptr);

}  // namespace sphfam
