#pragma once

// Linear independence over a prime field F_p that contains sqrt(5).
//
// The root systems used here have small coordinates, so every nonzero minor of
// a set of lines has field norm far below p (checked when a RootSpace is
// built). Under that bound, rank over F_p equals rank over the reals.

#include <cstdint>
#include <span>
#include <vector>

#include "sphfam/scalar.hpp"

namespace sphfam::modp {

struct PrimeField {
  std::uint32_t p;
  std::uint32_t sqrt5;  // sqrt5 * sqrt5 == 5 (mod p)

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  std::uint32_t pow(std::uint32_t base, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const { return pow(a, p - 2); }
};

const PrimeField& field();

std::uint32_t reduce(const Rational& q);
std::uint32_t reduce(const QScalar& x);

/// Row-echelon basis, rows normalized to pivot 1.
class EchelonBasis {
 public:
  explicit EchelonBasis(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(pivots_.size()); }

  // True iff v is outside the current span; the basis is unchanged.
  bool independent(std::span<const std::uint32_t> v) const;
  // Adds v if independent; returns whether it was added.
  bool try_add(std::span<const std::uint32_t> v);

 private:
  void reduce_into(std::span<const std::uint32_t> v, std::vector<std::uint32_t>& out) const;

  int dim_;
  std::vector<std::uint32_t> rows_;
  std::vector<int> pivots_;
};

}  // namespace sphfam::modp
