#pragma once

// Reference code lists bundled with the library, and comparison helpers.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "sphfam/families.hpp"

namespace sphfam {

enum class Provenance { Printed, Derived };

std::string_view to_string(Provenance p);

/// Parsed list file: "# kind: E6" and "# provenance: printed|derived ..."
/// headers, then either codes or triangles ("k/l k/l k/l" per line).
struct ReferenceList {
  std::string name;
  GroupKind kind;
  Provenance provenance = Provenance::Printed;
  std::vector<mpz_class> codes;                   // ascending
  std::vector<std::vector<Angle>> triangles;      // triangle lists only
  std::string text;                               // file contents

  // Codes of a triangle list, or the codes themselves.
  std::vector<mpz_class> effective_codes() const;
};

// Throws ParseError on malformed lines, unsorted or repeated codes.
ReferenceList parse_reference(std::string_view text, std::string name = "input");

// e6_printed, e7_printed, h4_printed, h3_triangles_printed, f4_derived,
// e8_derived, fifths_derived.
const std::vector<ReferenceList>& bundled_references();
const ReferenceList& bundled_reference(std::string_view name);

// FNV-1a 64-bit of the bytes, 16 hex digits.
std::string content_hash(std::string_view text);

// Diagram whose reading, in the given scheme on n vertices, is `code`.
FamilyDiagram diagram_from_code(const mpz_class& code, CodeScheme scheme, int n);
// Smallest reading of the same diagram.
CanonicalCode recanonicalize(const mpz_class& code, CodeScheme scheme, int n);

struct CodeDiff {
  std::vector<mpz_class> missing;  // in the reference only
  std::vector<mpz_class> extra;    // computed only

  bool empty() const { return missing.empty() && extra.empty(); }
  // "-code" lines for missing, "+code" lines for extra, ascending.
  std::string to_string() const;
};

CodeDiff diff_codes(const std::vector<mpz_class>& computed, const std::vector<mpz_class>& reference);

}  // namespace sphfam
