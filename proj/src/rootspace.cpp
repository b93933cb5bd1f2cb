#include "sphfam/rootspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "sphfam/error.hpp"
#include "sphfam/modp.hpp"

namespace sphfam {

GroupKind GroupKind::A(int n) {
  if (n < 1) throw UnsupportedKind("A(n) needs n >= 1");
  return {KindTag::A, n};
}
GroupKind GroupKind::B(int n) {
  if (n < 2) throw UnsupportedKind("B(n) needs n >= 2");
  return {KindTag::B, n};
}
GroupKind GroupKind::D(int n) {
  if (n < 4) throw UnsupportedKind("D(n) needs n >= 4");
  return {KindTag::D, n};
}
GroupKind GroupKind::E(int n) {
  if (n < 6 || n > 8) throw UnsupportedKind("E(n) needs 6 <= n <= 8");
  return {KindTag::E, n};
}
GroupKind GroupKind::H(int n) {
  if (n < 3 || n > 4) throw UnsupportedKind("H(n) needs n = 3 or 4");
  return {KindTag::H, n};
}
GroupKind GroupKind::G2(int m) {
  if (m < 3) throw UnsupportedKind("G2(m) needs m >= 3");
  return {KindTag::G2, m};
}

std::string GroupKind::name() const {
  switch (tag) {
    case KindTag::A: return "A" + std::to_string(param);
    case KindTag::B: return "B" + std::to_string(param);
    case KindTag::D: return "D" + std::to_string(param);
    case KindTag::E: return "E" + std::to_string(param);
    case KindTag::F: return "F4";
    case KindTag::H: return "H" + std::to_string(param);
    case KindTag::G2: return "G2(" + std::to_string(param) + ")";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view text) {
  auto number = [&](std::string_view digits) {
    if (digits.empty() || digits.size() > 4) throw ParseError("bad group kind '" + std::string(text) + "'");
    int v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw ParseError("bad group kind '" + std::string(text) + "'");
      v = v * 10 + (c - '0');
    }
    return v;
  };
  if (text.size() < 2) throw ParseError("bad group kind '" + std::string(text) + "'");
  try {
    if (text.starts_with("G2(") && text.ends_with(")"))
      return GroupKind::G2(number(text.substr(3, text.size() - 4)));
    const int n = number(text.substr(1));
    switch (text[0]) {
      case 'A': return GroupKind::A(n);
      case 'B': return GroupKind::B(n);
      case 'D': return GroupKind::D(n);
      case 'E': return GroupKind::E(n);
      case 'F':
        if (n == 4) return GroupKind::F4();
        break;
      case 'H': return GroupKind::H(n);
      default: break;
    }
  } catch (const UnsupportedKind& e) {
    throw ParseError(e.what());
  }
  throw ParseError("bad group kind '" + std::string(text) + "'");
}

QScalar dot(const Vector& u, const Vector& v) {
  QScalar s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero() || v[i].is_zero()) continue;
    s += u[i] * v[i];
  }
  return s;
}

Vector reflect(const Vector& v, const Vector& root) {
  const QScalar rr = dot(root, root);
  if (rr.is_zero()) throw std::domain_error("reflection in a zero vector");
  const QScalar k = QScalar(2) * dot(v, root) / rr;
  Vector out = v;
  if (k.is_zero()) return out;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!root[i].is_zero()) out[i] -= k * root[i];
  return out;
}

std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

std::string_view to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Orth: return "Orth";
    case EdgeClass::K3: return "K3";
    case EdgeClass::K4: return "K4";
    case EdgeClass::K5: return "K5";
    case EdgeClass::K5p: return "K5'";
  }
  return "?";
}

PairClass angle_class(const Vector& u, const Vector& v) {
  const QScalar uv = dot(u, v);
  const QScalar c = uv * uv / (dot(u, u) * dot(v, v));
  const int sign = uv.sign();
  if (c.is_zero()) return {EdgeClass::Orth, 0};
  if (c == QScalar(1)) throw std::invalid_argument("angle_class: proportional vectors");
  if (c == QScalar(Rational(1, 4))) return {EdgeClass::K3, sign};
  if (c == QScalar(Rational(1, 2))) return {EdgeClass::K4, sign};
  if (c == QScalar(Rational(3, 8), Rational(1, 8))) return {EdgeClass::K5, sign};
  if (c == QScalar(Rational(3, 8), Rational(-1, 8))) return {EdgeClass::K5p, sign};
  throw std::invalid_argument("angle_class: not a valid pair (cos^2 = " + to_string(c) + ")");
}

int rank_of(std::span<const Vector> vectors) {
  if (vectors.empty()) return 0;
  std::vector<Vector> m(vectors.begin(), vectors.end());
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  QScalar prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const QScalar pivot = m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const QScalar lead = m[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[i][j] * pivot - lead * m[r][j]) / prev;
      m[i][c] = QScalar();
    }
    prev = pivot;
    ++r;
  }
  return static_cast<int>(r);
}

bool is_indecomposable(std::span<const Vector> vectors) {
  const std::size_t n = vectors.size();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j] || dot(vectors[i], vectors[j]).is_zero()) continue;
      seen[j] = true;
      ++count;
      stack.push_back(j);
    }
  }
  return count == n;
}

namespace {

// Canonical sign: first nonzero coordinate positive.
std::pair<Vector, int> normalize_line(Vector v) {
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    if (x.sign() > 0) return {std::move(v), 1};
    for (auto& y : v) y = -y;
    return {std::move(v), -1};
  }
  throw std::domain_error("zero vector has no line");
}

bool lex_greater(const Vector& a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int s = (a[i] - b[i]).sign();
    if (s != 0) return s > 0;
  }
  return false;
}

Vector unit(int dim, int i, const QScalar& value = QScalar(1)) {
  Vector v(dim);
  v[i] = value;
  return v;
}

std::vector<Vector> roots_a(int n) {
  std::vector<Vector> out;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      Vector v(n + 1);
      v[i] = 1;
      v[j] = -1;
      out.push_back(std::move(v));
    }
  return out;
}

std::vector<Vector> roots_d(int n) {
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          Vector v(n);
          v[i] = si;
          v[j] = sj;
          out.push_back(std::move(v));
        }
  return out;
}

std::vector<Vector> roots_b(int n) {
  std::vector<Vector> out = roots_d(n);
  for (int i = 0; i < n; ++i) {
    out.push_back(unit(n, i));
    out.push_back(unit(n, i, QScalar(-1)));
  }
  return out;
}

std::vector<Vector> roots_e8() {
  std::vector<Vector> out = roots_d(8);
  const Rational half(1, 2);
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    Vector v(8);
    for (int i = 0; i < 8; ++i) v[i] = (mask >> i & 1) ? QScalar(-half) : QScalar(half);
    out.push_back(std::move(v));
  }
  return out;
}

// E7: E8 roots orthogonal to (1/2,...,1/2). E6: additionally orthogonal to h7 + h8.
std::vector<Vector> roots_e(int n) {
  std::vector<Vector> out;
  for (auto& v : roots_e8()) {
    QScalar sum;
    for (const auto& x : v) sum += x;
    if (n <= 7 && !sum.is_zero()) continue;
    if (n == 6 && !(v[6] + v[7]).is_zero()) continue;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> roots_f4() {
  std::vector<Vector> out = roots_b(4);
  const Rational half(1, 2);
  for (int mask = 0; mask < 16; ++mask) {
    Vector v(4);
    for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? QScalar(-half) : QScalar(half);
    out.push_back(std::move(v));
  }
  return out;
}

// The 600-cell vertices: unit vectors, 8 + 16 + 96.
std::vector<Vector> roots_h4() {
  std::vector<Vector> out = roots_b(4);
  std::erase_if(out, [](const Vector& v) { return dot(v, v) != QScalar(1); });
  const Rational half(1, 2);
  for (int mask = 0; mask < 16; ++mask) {
    Vector v(4);
    for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? QScalar(-half) : QScalar(half);
    out.push_back(std::move(v));
  }
  const QScalar phi_half = golden_ratio() * QScalar(half);
  const QScalar one_half(half);
  const QScalar inv_phi_half = (golden_ratio() - QScalar(1)) * QScalar(half);
  const std::array<QScalar, 4> base{phi_half, one_half, inv_phi_half, QScalar(0)};
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    if (inversions % 2 != 0) continue;
    for (int mask = 0; mask < 8; ++mask) {
      Vector v(4);
      for (int i = 0; i < 4; ++i) {
        QScalar x = base[perm[i]];
        if (perm[i] < 3 && (mask >> perm[i] & 1)) x = -x;
        v[i] = x;
      }
      out.push_back(std::move(v));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Vector> roots_h3() {
  std::vector<Vector> out;
  for (auto& v : roots_h4())
    if (v[3].is_zero()) out.push_back(std::move(v));
  return out;
}

std::string line_key(const Vector& v) { return to_string(v); }

}  // namespace

RootSpace::RootSpace(GroupKind kind, std::vector<Vector> roots)
    : kind_(kind), dim_(roots.empty() ? 0 : static_cast<int>(roots[0].size())), roots_(std::move(roots)) {
  for (const auto& r : roots_) {
    auto [line, sign] = normalize_line(r);
    if (sign > 0) lines_.push_back(std::move(line));
  }
  std::sort(lines_.begin(), lines_.end(), lex_greater);
  lines_.erase(std::unique(lines_.begin(), lines_.end()), lines_.end());
  const std::size_t n = lines_.size();
  if (n > 65535) throw UnsupportedKind("root system too large");

  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) index_.emplace_back(line_key(lines_[i]), static_cast<int>(i));
  std::sort(index_.begin(), index_.end());

  std::vector<QScalar> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = dot(lines_[i], lines_[i]);
  const QScalar shortest = *std::min_element(norms.begin(), norms.end());
  length_class_.resize(n);
  for (std::size_t i = 0; i < n; ++i) length_class_[i] = norms[i] == shortest ? 0 : 1;

  table_.assign(n * n, Cell{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Cell& c = table_[i * n + j];
      if (i == j) {
        c.sign = 1;
        c.refl_line = static_cast<std::uint16_t>(i);
        c.refl_sign = -1;
        continue;
      }
      const QScalar ip = dot(lines_[i], lines_[j]);
      if (ip.is_zero()) {
        c.refl_line = static_cast<std::uint16_t>(j);
        continue;
      }
      const PairClass pc = angle_class(lines_[i], lines_[j]);
      c.cls = pc.cls;
      c.sign = static_cast<std::int8_t>(pc.sign);
      auto [image, sign] = normalize_line(reflect(lines_[j], lines_[i]));
      const int k = find_line(image);
      if (k < 0) throw Error(kind.name() + ": root system not closed under reflection");
      c.refl_line = static_cast<std::uint16_t>(k);
      c.refl_sign = static_cast<std::int8_t>(sign);
    }
  }

  // Bound on |N(minor)| for coordinates scaled to Z[sqrt5]; must stay below p.
  mpz_class scale = 1;
  double max_norm = 0.0;
  double max_conj_norm = 0.0;
  for (const auto& v : lines_) {
    double nrm = 0.0;
    double conj = 0.0;
    for (const auto& x : v) {
      scale = lcm(scale, x.rational_part().get_den());
      scale = lcm(scale, x.radical_part().get_den());
      const double d = x.to_double();
      const double dc = x.conjugate().to_double();
      nrm += d * d;
      conj += dc * dc;
    }
    max_norm = std::max(max_norm, nrm);
    max_conj_norm = std::max(max_conj_norm, conj);
  }
  const double s2 = scale.get_d() * scale.get_d();
  const double r = static_cast<double>(std::min(dim_, kind.rank()));
  const double bound = std::pow(std::max(1.0, s2 * max_norm), r / 2) *
                       std::pow(std::max(1.0, s2 * max_conj_norm), r / 2);
  if (bound >= static_cast<double>(modp::field().p))
    throw UnsupportedKind(kind.name() + ": coordinates too large for modular rank tests");

  modp_.reserve(n * dim_);
  for (const auto& v : lines_)
    for (const auto& x : v) modp_.push_back(modp::reduce(x));
}

int RootSpace::find_line(const Vector& v) const {
  if (static_cast<int>(v.size()) != dim_) return -1;
  bool nonzero = false;
  for (const auto& x : v) nonzero = nonzero || !x.is_zero();
  if (!nonzero) return -1;
  const std::string key = line_key(normalize_line(v).first);
  auto it = std::lower_bound(index_.begin(), index_.end(), std::make_pair(key, -1));
  if (it == index_.end() || it->first != key) return -1;
  return it->second;
}

std::vector<Vector> RootSpace::vectors(std::span<const int> ids) const {
  std::vector<Vector> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(lines_[i]);
  return out;
}

RootSpace build_root_space(GroupKind kind) {
  switch (kind.tag) {
    case KindTag::A: return RootSpace(kind, roots_a(kind.param));
    case KindTag::B: return RootSpace(kind, roots_b(kind.param));
    case KindTag::D: return RootSpace(kind, roots_d(kind.param));
    case KindTag::E: return RootSpace(kind, roots_e(kind.param));
    case KindTag::F: return RootSpace(kind, roots_f4());
    case KindTag::H: return RootSpace(kind, kind.param == 4 ? roots_h4() : roots_h3());
    case KindTag::G2: break;
  }
  throw UnsupportedKind(kind.name() + " has no root space");
}

const RootSpace& root_space(GroupKind kind) {
  static std::mutex mu;
  static std::map<GroupKind, std::unique_ptr<RootSpace>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[kind];
  if (!slot) slot = std::make_unique<RootSpace>(build_root_space(kind));
  return *slot;
}

}  // namespace sphfam
