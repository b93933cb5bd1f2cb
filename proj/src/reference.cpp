#include "sphfam/reference.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "sphfam/error.hpp"

namespace sphfam {

namespace detail {
// Generated at configure time from data/*.txt: (stem, contents) pairs.
extern const std::vector<std::pair<std::string_view, std::string_view>> kBundledFiles;
}  // namespace detail

std::string_view to_string(Provenance p) { return p == Provenance::Printed ? "printed" : "derived"; }

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Angle parse_angle(const std::string& token) {
  const auto slash = token.find('/');
  if (slash == std::string::npos) throw ParseError("expected k/l, got '" + token + "'");
  try {
    std::size_t used = 0;
    const int k = std::stoi(token.substr(0, slash), &used);
    if (used != slash) throw ParseError("bad angle '" + token + "'");
    const std::string den = token.substr(slash + 1);
    const int l = std::stoi(den, &used);
    if (used != den.size()) throw ParseError("bad angle '" + token + "'");
    if (k <= 0 || l <= 0 || k >= l) throw ParseError("angle '" + token + "' is not in (0, pi)");
    return Angle(k, l);
  } catch (const std::logic_error&) {
    throw ParseError("bad angle '" + token + "'");
  }
}

int base_of(CodeScheme s) { return s == CodeScheme::Binary ? 2 : (s == CodeScheme::Base4 ? 4 : 3); }

EdgeClass class_of_digit(int digit, CodeScheme s) {
  if (digit == 0) return EdgeClass::Orth;
  if (digit == 1) return EdgeClass::K3;
  if (s == CodeScheme::Base4) return digit == 2 ? EdgeClass::K5 : EdgeClass::K5p;
  return EdgeClass::K4;
}

}  // namespace

std::vector<mpz_class> ReferenceList::effective_codes() const {
  if (triangles.empty()) return codes;
  std::vector<mpz_class> out;
  for (const auto& t : triangles) {
    std::vector<std::vector<Angle>> a(3, std::vector<Angle>(3));
    a[0][1] = a[1][0] = t[0];
    a[0][2] = a[2][0] = t[1];
    a[1][2] = a[2][1] = t[2];
    out.push_back(canonical_code(labeled_from_angles(a).diagram, default_scheme(kind)).value());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReferenceList parse_reference(std::string_view text, std::string name) {
  ReferenceList r;
  r.name = std::move(name);
  r.text = std::string(text);
  bool have_kind = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      if (body.rfind("kind:", 0) == 0) {
        r.kind = parse_group_kind(trim(body.substr(5)));
        have_kind = true;
      } else if (body.rfind("provenance:", 0) == 0) {
        const std::string p = trim(body.substr(11));
        if (p.rfind("printed", 0) == 0) {
          r.provenance = Provenance::Printed;
        } else if (p.rfind("derived", 0) == 0) {
          r.provenance = Provenance::Derived;
        } else {
          throw ParseError(r.name + ":" + std::to_string(lineno) + ": unknown provenance");
        }
      }
      continue;
    }
    std::istringstream tokens(line);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (line.find('/') != std::string::npos) {
      if (words.size() != 3) throw ParseError(r.name + ":" + std::to_string(lineno) + ": a triangle needs three angles");
      std::vector<Angle> t;
      for (const auto& w : words) t.push_back(parse_angle(w));
      r.triangles.push_back(std::move(t));
      continue;
    }
    for (const auto& w : words) {
      if (w.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(r.name + ":" + std::to_string(lineno) + ": '" + w + "' is not a code");
      mpz_class c(w);
      if (!r.codes.empty() && c <= r.codes.back())
        throw ParseError(r.name + ":" + std::to_string(lineno) + ": codes must be strictly ascending");
      r.codes.push_back(std::move(c));
    }
  }
  if (!have_kind) throw ParseError(r.name + ": missing '# kind:' header");
  if (!r.codes.empty() && !r.triangles.empty()) throw ParseError(r.name + ": mixes codes and triangles");
  return r;
}

const std::vector<ReferenceList>& bundled_references() {
  static const std::vector<ReferenceList> lists = [] {
    std::vector<ReferenceList> v;
    for (const auto& [stem, text] : detail::kBundledFiles) v.push_back(parse_reference(text, std::string(stem)));
    return v;
  }();
  return lists;
}

const ReferenceList& bundled_reference(std::string_view name) {
  for (const auto& r : bundled_references())
    if (r.name == name) return r;
  throw Error("no bundled list named '" + std::string(name) + "'");
}

std::string content_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FamilyDiagram diagram_from_code(const mpz_class& code, CodeScheme scheme, int n) {
  const int positions = n * (n - 1) / 2;
  const int base = base_of(scheme);
  if (code < 0) throw ParseError("negative code");
  std::vector<int> digits(positions);
  mpz_class rest = code;
  for (int p = positions - 1; p >= 0; --p) {
    const mpz_class q = rest / base;
    digits[p] = static_cast<int>(mpz_class(rest - q * base).get_si());
    rest = q;
  }
  if (rest != 0) throw ParseError("code " + code.get_str() + " has too many digits for " + std::to_string(n) + " vertices");
  FamilyDiagram d(n);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.set(i, j, class_of_digit(digits[p++], scheme));
  return d;
}

CanonicalCode recanonicalize(const mpz_class& code, CodeScheme scheme, int n) {
  return canonical_code(diagram_from_code(code, scheme, n), scheme);
}

CodeDiff diff_codes(const std::vector<mpz_class>& computed, const std::vector<mpz_class>& reference) {
  std::vector<mpz_class> a = computed, b = reference;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  CodeDiff d;
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.missing));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.extra));
  return d;
}

std::string CodeDiff::to_string() const {
  std::string s;
  for (const auto& c : missing) s += "-" + c.get_str() + "\n";
  for (const auto& c : extra) s += "+" + c.get_str() + "\n";
  return s;
}

}  // namespace sphfam
