#pragma once

// Finite root systems with exact coordinates and their line geometry.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sphfam/scalar.hpp"

namespace sphfam {

enum class KindTag : std::uint8_t { A, B, D, E, F, H, G2 };

/// Indecomposable spherical Coxeter group: A(n), B(n), D(n), E6-8, F4, H3, H4, G2(m).
struct GroupKind {
  KindTag tag = KindTag::A;
  int param = 1;  // rank, or m for G2(m)

  static GroupKind A(int n);
  static GroupKind B(int n);
  static GroupKind D(int n);
  static GroupKind E(int n);
  static GroupKind F4() { return {KindTag::F, 4}; }
  static GroupKind H(int n);
  static GroupKind G2(int m);

  int rank() const { return tag == KindTag::G2 ? 2 : param; }
  bool has_root_space() const { return tag != KindTag::G2; }
  bool crystallographic() const { return tag != KindTag::H && tag != KindTag::G2; }
  std::string name() const;

  friend auto operator<=>(const GroupKind&, const GroupKind&) = default;
};

GroupKind parse_group_kind(std::string_view text);

using Vector = std::vector<QScalar>;

QScalar dot(const Vector& u, const Vector& v);
Vector reflect(const Vector& v, const Vector& root);
std::string to_string(const Vector& v);

/// Classes of unordered line pairs by cos^2 of the angle between them.
enum class EdgeClass : std::uint8_t {
  Orth = 0,  // pi/2
  K3 = 1,    // pi/3, 2pi/3
  K4 = 2,    // pi/4, 3pi/4
  K5 = 3,    // pi/5, 4pi/5
  K5p = 4,   // 2pi/5, 3pi/5
};

std::string_view to_string(EdgeClass c);

struct PairClass {
  EdgeClass cls;
  int sign;  // sign of the inner product
  friend bool operator==(const PairClass&, const PairClass&) = default;
};

PairClass angle_class(const Vector& u, const Vector& v);

int rank_of(std::span<const Vector> vectors);
bool is_indecomposable(std::span<const Vector> vectors);

class RootSpace {
 public:
  RootSpace(GroupKind kind, std::vector<Vector> roots);

  GroupKind kind() const { return kind_; }
  int rank() const { return kind_.rank(); }
  int ambient_dim() const { return dim_; }
  std::span<const Vector> roots() const { return roots_; }
  std::span<const Vector> lines() const { return lines_; }
  int line_count() const { return static_cast<int>(lines_.size()); }
  const Vector& line(int i) const { return lines_[i]; }

  EdgeClass edge_class(int i, int j) const { return cell(i, j).cls; }
  int inner_sign(int i, int j) const { return cell(i, j).sign; }
  // Reflecting line `target` in line `mirror` gives reflected_sign * line(reflected_line).
  int reflected_line(int mirror, int target) const { return cell(mirror, target).refl_line; }
  int reflected_sign(int mirror, int target) const { return cell(mirror, target).refl_sign; }
  // 0 for the shortest roots, 1 for longer ones.
  int length_class(int i) const { return length_class_[i]; }

  // Index of the line through v, or -1.
  int find_line(const Vector& v) const;

  std::span<const std::uint32_t> modp_line(int i) const {
    return {modp_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }

  std::vector<Vector> vectors(std::span<const int> ids) const;

 private:
  struct Cell {
    EdgeClass cls = EdgeClass::Orth;
    std::int8_t sign = 0;
    std::int8_t refl_sign = 1;
    std::uint16_t refl_line = 0;
  };
  const Cell& cell(int i, int j) const { return table_[static_cast<std::size_t>(i) * lines_.size() + j]; }

  GroupKind kind_;
  int dim_;
  std::vector<Vector> roots_;
  std::vector<Vector> lines_;
  std::vector<Cell> table_;
  std::vector<int> length_class_;
  std::vector<std::uint32_t> modp_;
  std::vector<std::pair<std::string, int>> index_;  // sorted by key
};

RootSpace build_root_space(GroupKind kind);
/// Process-wide cache; built on first use, safe to call concurrently.
const RootSpace& root_space(GroupKind kind);

}  // namespace sphfam
