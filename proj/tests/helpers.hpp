#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sphfam/families.hpp"

namespace testing {

// Line id of sum c_i h_i in the ambient space.
inline int line_of(const sphfam::RootSpace& rs, std::initializer_list<std::pair<int, int>> entries) {
  sphfam::Vector v(rs.ambient_dim());
  for (auto [i, c] : entries) v[i] = c;
  const int id = rs.find_line(v);
  if (id < 0) throw std::logic_error("not a line of the space");
  return id;
}

inline sphfam::Family family_of(sphfam::GroupKind kind, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  return sphfam::make_family(kind, std::move(ids));
}

}  // namespace testing
