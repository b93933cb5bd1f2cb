#include "sphfam/modp.hpp"

namespace sphfam::modp {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField find_field() {
  // Largest prime below 2^31 with p = 3 (mod 4) and p = +-1 (mod 5): then 5 is
  // a square and sqrt(5) = 5^((p+1)/4).
  for (std::uint32_t p = (1u << 31) - 1;; p -= 2) {
    if (p % 4 != 3) continue;
    if (p % 5 != 1 && p % 5 != 4) continue;
    if (!is_prime(p)) continue;
    PrimeField f{p, 0};
    f.sqrt5 = f.pow(5, (static_cast<std::uint64_t>(p) + 1) / 4);
    return f;
  }
}

}  // namespace

std::uint32_t PrimeField::pow(std::uint32_t base, std::uint64_t e) const {
  std::uint64_t result = 1;
  std::uint64_t b = base % p;
  while (e > 0) {
    if (e & 1) result = result * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

const PrimeField& field() {
  static const PrimeField f = find_field();
  return f;
}

std::uint32_t reduce(const Rational& q) {
  const PrimeField& f = field();
  mpz_class num = q.get_num() % f.p;
  if (num < 0) num += f.p;
  const mpz_class den = q.get_den() % f.p;
  return f.mul(static_cast<std::uint32_t>(num.get_ui()), f.inv(static_cast<std::uint32_t>(den.get_ui())));
}

std::uint32_t reduce(const QScalar& x) {
  const PrimeField& f = field();
  return f.add(reduce(x.rational_part()), f.mul(reduce(x.radical_part()), f.sqrt5));
}

void EchelonBasis::reduce_into(std::span<const std::uint32_t> v,
                               std::vector<std::uint32_t>& out) const {
  const PrimeField& f = field();
  out.assign(v.begin(), v.end());
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const std::uint32_t factor = out[pivots_[r]];
    if (factor == 0) continue;
    const std::uint32_t* row = rows_.data() + r * dim_;
    for (int c = 0; c < dim_; ++c) out[c] = f.sub(out[c], f.mul(factor, row[c]));
  }
}

bool EchelonBasis::independent(std::span<const std::uint32_t> v) const {
  thread_local std::vector<std::uint32_t> scratch;
  reduce_into(v, scratch);
  for (std::uint32_t x : scratch)
    if (x != 0) return true;
  return false;
}

bool EchelonBasis::try_add(std::span<const std::uint32_t> v) {
  std::vector<std::uint32_t> w;
  reduce_into(v, w);
  int pivot = -1;
  for (int c = 0; c < dim_; ++c) {
    if (w[c] != 0) {
      pivot = c;
      break;
    }
  }
  if (pivot < 0) return false;
  const PrimeField& f = field();
  const std::uint32_t inv = f.inv(w[pivot]);
  for (auto& x : w) x = f.mul(x, inv);
  // Keep earlier rows reduced against the new pivot so reduce_into stays one pass.
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    std::uint32_t* row = rows_.data() + r * dim_;
    const std::uint32_t factor = row[pivot];
    if (factor == 0) continue;
    for (int c = 0; c < dim_; ++c) row[c] = f.sub(row[c], f.mul(factor, w[c]));
  }
  rows_.insert(rows_.end(), w.begin(), w.end());
  pivots_.push_back(pivot);
  return true;
}

}  // namespace sphfam::modp
