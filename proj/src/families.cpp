#include "sphfam/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sphfam/error.hpp"

namespace sphfam {

Family make_family(GroupKind ambient, std::vector<int> line_ids) {
  const RootSpace& rs = root_space(ambient);
  if (static_cast<int>(line_ids.size()) != rs.rank())
    throw Error("family for " + ambient.name() + " needs " + std::to_string(rs.rank()) + " lines");
  for (std::size_t i = 0; i < line_ids.size(); ++i) {
    if (line_ids[i] < 0 || line_ids[i] >= rs.line_count()) throw Error("line id out of range");
    if (i > 0 && line_ids[i] <= line_ids[i - 1]) throw Error("line ids must be strictly increasing");
  }
  if (rank_of(rs.vectors(line_ids)) != rs.rank()) throw Error("family lines are not linearly independent");
  return {ambient, std::move(line_ids)};
}

DigitMatrix FamilyDiagram::digits() const {
  DigitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.set(i, j, static_cast<std::uint8_t>(at(i, j)));
  return m;
}

Angle::Angle(int num, int den) {
  if (den <= 0 || num <= 0 || num >= den) throw ParseError("angle must be k*pi/l with 0 < k < l");
  const int g = std::gcd(num, den);
  k = num / g;
  l = den / g;
}

Angle dihedral_angle(EdgeClass cls, int sign) {
  const bool obtuse = sign > 0;
  switch (cls) {
    case EdgeClass::Orth: return Angle(1, 2);
    case EdgeClass::K3: return obtuse ? Angle(2, 3) : Angle(1, 3);
    case EdgeClass::K4: return obtuse ? Angle(3, 4) : Angle(1, 4);
    case EdgeClass::K5: return obtuse ? Angle(4, 5) : Angle(1, 5);
    case EdgeClass::K5p: return obtuse ? Angle(3, 5) : Angle(2, 5);
  }
  return Angle(1, 2);
}

PairClass pair_class_of(Angle a) {
  for (auto cls : {EdgeClass::Orth, EdgeClass::K3, EdgeClass::K4, EdgeClass::K5, EdgeClass::K5p})
    for (int sign : {-1, 1})
      if (dihedral_angle(cls, sign) == a) return {cls, cls == EdgeClass::Orth ? 0 : sign};
  throw ParseError("angle " + a.to_string() + " has no line-pair class");
}

void LabeledDiagram::flip(int i) {
  const int n = diagram.n;
  for (int j = 0; j < n; ++j) {
    sign[static_cast<std::size_t>(i) * n + j] = static_cast<signed char>(-sign[static_cast<std::size_t>(i) * n + j]);
    sign[static_cast<std::size_t>(j) * n + i] = static_cast<signed char>(-sign[static_cast<std::size_t>(j) * n + i]);
  }
}

DigitMatrix LabeledDiagram::digits() const {
  const int n = diagram.n;
  DigitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int c = static_cast<int>(diagram.at(i, j));
      m.set(i, j, static_cast<std::uint8_t>(c == 0 ? 0 : 2 * c - (sign_at(i, j) > 0 ? 1 : 0)));
    }
  return m;
}

LabeledDiagram labeled_from_angles(const std::vector<std::vector<Angle>>& angles) {
  const int n = static_cast<int>(angles.size());
  LabeledDiagram d{FamilyDiagram(n), std::vector<signed char>(static_cast<std::size_t>(n) * n, 0)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const PairClass pc = pair_class_of(angles[i][j]);
      d.diagram.set(i, j, pc.cls);
      d.sign[static_cast<std::size_t>(i) * n + j] = static_cast<signed char>(pc.sign);
      d.sign[static_cast<std::size_t>(j) * n + i] = static_cast<signed char>(pc.sign);
    }
  return d;
}

std::string_view to_string(CodeScheme s) {
  switch (s) {
    case CodeScheme::Binary: return "binary";
    case CodeScheme::Base4: return "base4";
    case CodeScheme::General: return "general";
  }
  return "?";
}

CodeScheme default_scheme(GroupKind kind) {
  switch (kind.tag) {
    case KindTag::A:
    case KindTag::D:
    case KindTag::E: return CodeScheme::Binary;
    case KindTag::H:
    case KindTag::G2: return CodeScheme::Base4;
    default: return CodeScheme::General;
  }
}

mpz_class CanonicalCode::value() const {
  const int base = scheme == CodeScheme::Binary ? 2 : (scheme == CodeScheme::Base4 ? 4 : 3);
  mpz_class v = 0;
  for (auto d : digits) v = v * base + d;
  return v;
}

std::string CanonicalCode::digit_string() const {
  std::string s;
  for (auto d : digits) s.push_back(static_cast<char>('0' + d));
  return s;
}

FamilyDiagram diagram_of(const Family& family) { return labeled_diagram_of(family).diagram; }

LabeledDiagram labeled_diagram_of(const Family& family) {
  const RootSpace& rs = root_space(family.ambient);
  const int n = static_cast<int>(family.line_ids.size());
  LabeledDiagram d{FamilyDiagram(n), std::vector<signed char>(static_cast<std::size_t>(n) * n, 0)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int a = family.line_ids[i], b = family.line_ids[j];
      d.diagram.set(i, j, rs.edge_class(a, b));
      const auto s = static_cast<signed char>(rs.inner_sign(a, b));
      d.sign[static_cast<std::size_t>(i) * n + j] = s;
      d.sign[static_cast<std::size_t>(j) * n + i] = s;
    }
  return d;
}

CanonicalCode code_from_reading(const std::vector<std::uint8_t>& reading, CodeScheme scheme) {
  CanonicalCode code{scheme, {}};
  code.digits.reserve(reading.size());
  for (auto r : reading) {
    const auto cls = static_cast<EdgeClass>(r);
    int digit = -1;
    switch (scheme) {
      case CodeScheme::Binary:
        if (cls == EdgeClass::Orth || cls == EdgeClass::K3) digit = r;
        break;
      case CodeScheme::Base4:
        if (cls == EdgeClass::Orth || cls == EdgeClass::K3) digit = r;
        if (cls == EdgeClass::K5) digit = 2;
        if (cls == EdgeClass::K5p) digit = 3;
        break;
      case CodeScheme::General:
        if (cls == EdgeClass::Orth || cls == EdgeClass::K3 || cls == EdgeClass::K4) digit = r;
        break;
    }
    if (digit < 0)
      throw SchemeMismatch("edge class " + std::string(to_string(cls)) + " not allowed in the " +
                           std::string(to_string(scheme)) + " scheme");
    code.digits.push_back(static_cast<std::uint8_t>(digit));
  }
  return code;
}

// The scheme digit maps are monotone in the EdgeClass order, so one
// canonicalization over EdgeClass digits serves every scheme.
CanonicalCode canonical_code(const FamilyDiagram& diagram, CodeScheme scheme) {
  return code_from_reading(canonical_form(diagram.digits()).digits, scheme);
}

std::string labeled_key(const LabeledDiagram& d) {
  const auto form = canonical_form(d.digits());
  std::string s;
  for (auto x : form.digits) s.push_back(static_cast<char>('0' + x));
  return s;
}

namespace {

// Switch signs along a BFS forest taken in canonical position order so every
// tree edge is negative; the remaining signs then identify the switching class.
std::string normalized_signs(const DigitMatrix& cls, const SignTable& sign, const std::vector<int>& order) {
  const int n = cls.n;
  auto s_at = [&](int a, int b) { return sign[order[a] * kMaxVertices + order[b]]; };
  std::array<int, kMaxVertices> flip{};
  std::array<int, kMaxVertices> parent{};
  std::array<int, kMaxVertices> queue{};
  parent.fill(-1);
  for (int s = 0; s < n; ++s) {
    if (flip[s] != 0) continue;
    flip[s] = 1;
    int head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const int a = queue[head++];
      for (int b = 0; b < n; ++b) {
        if (flip[b] != 0 || cls.at(order[a], order[b]) == 0) continue;
        flip[b] = -s_at(a, b) * flip[a];
        parent[b] = a;
        queue[tail++] = b;
      }
    }
  }
  std::string out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (cls.at(order[a], order[b]) == 0 || parent[b] == a) continue;
      out.push_back(s_at(a, b) * flip[a] * flip[b] > 0 ? '+' : '-');
    }
  return out;
}

}  // namespace

std::string family_key(const DigitMatrix& classes, const SignTable& signs) {
  std::vector<std::uint8_t> reading;
  const auto orders = optimal_orderings(classes, &reading);
  std::string best;
  bool first = true;
  for (const auto& order : orders) {
    std::string s = normalized_signs(classes, signs, order);
    if (first || s < best) best = std::move(s);
    first = false;
  }
  std::string key;
  key.reserve(reading.size() + 1 + best.size());
  for (auto x : reading) key.push_back(static_cast<char>('0' + x));
  key.push_back(':');
  return key + best;
}

std::string family_key(const LabeledDiagram& d) {
  SignTable signs{};
  for (int i = 0; i < d.n(); ++i)
    for (int j = 0; j < d.n(); ++j) signs[i * kMaxVertices + j] = static_cast<signed char>(d.sign_at(i, j));
  return family_key(d.diagram.digits(), signs);
}

std::string family_key(const Family& family) { return family_key(labeled_diagram_of(family)); }

std::vector<LabeledDiagram> signed_simplices(const LabeledDiagram& d) {
  const int n = d.n();
  std::vector<LabeledDiagram> out;
  std::set<std::string> seen;
  const unsigned patterns = n == 0 ? 1u : 1u << (n - 1);
  for (unsigned mask = 0; mask < patterns; ++mask) {
    LabeledDiagram s = d;
    for (int i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) s.flip(i);
    if (seen.insert(labeled_key(s)).second) out.push_back(std::move(s));
  }
  return out;
}

std::vector<LabeledDiagram> signed_simplices(const Family& family) {
  return signed_simplices(labeled_diagram_of(family));
}

std::vector<Angle> min_angle_sum_representative(const LabeledDiagram& d) {
  const int n = d.n();
  std::vector<Angle> best;
  Rational best_sum;
  const unsigned patterns = n == 0 ? 1u : 1u << (n - 1);
  for (unsigned mask = 0; mask < patterns; ++mask) {
    LabeledDiagram s = d;
    for (int i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) s.flip(i);
    std::vector<Angle> angles;
    Rational sum = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        angles.push_back(s.angle(i, j));
        sum += angles.back().value();
      }
    std::sort(angles.begin(), angles.end());
    if (mask == 0 || sum < best_sum || (sum == best_sum && angles < best)) {
      best = std::move(angles);
      best_sum = sum;
    }
  }
  return best;
}

std::vector<Angle> min_angle_sum_representative(const Family& family) {
  return min_angle_sum_representative(labeled_diagram_of(family));
}

std::string to_dot(const FamilyDiagram& d, const std::string& name) {
  std::string out = "graph \"" + name + "\" {\n  node [shape=circle];\n";
  for (int i = 0; i < d.n; ++i) out += "  " + std::to_string(i) + ";\n";
  for (int i = 0; i < d.n; ++i)
    for (int j = i + 1; j < d.n; ++j) {
      const EdgeClass c = d.at(i, j);
      if (c == EdgeClass::Orth) continue;
      const int folds = c == EdgeClass::K3 ? 1 : (c == EdgeClass::K4 ? 2 : 3);
      const std::string attrs =
          c == EdgeClass::K5p ? " [class=\"K5'\", style=dashed, split=true]" : " [class=\"" + std::string(to_string(c)) + "\"]";
      for (int f = 0; f < folds; ++f) out += "  " + std::to_string(i) + " -- " + std::to_string(j) + attrs + ";\n";
    }
  return out + "}\n";
}

FamilyDiagram diagram_from_digits(std::string_view digits) {
  int n = 1;
  while (static_cast<std::size_t>(n * (n - 1) / 2) < digits.size()) ++n;
  if (static_cast<std::size_t>(n * (n - 1) / 2) != digits.size())
    throw ParseError("digit string length is not n(n-1)/2");
  if (n > kMaxVertices) throw ParseError("diagram too large");
  FamilyDiagram d(n);
  std::size_t p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const char c = digits[p++];
      if (c < '0' || c > '4') throw ParseError("diagram digits must be 0..4");
      d.set(i, j, static_cast<EdgeClass>(c - '0'));
    }
  return d;
}

std::string diagram_digits(const FamilyDiagram& d) {
  std::string s;
  for (int i = 0; i < d.n; ++i)
    for (int j = i + 1; j < d.n; ++j) s.push_back(static_cast<char>('0' + static_cast<int>(d.at(i, j))));
  return s;
}

}  // namespace sphfam
