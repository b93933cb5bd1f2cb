#include "sphfam/canonical.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace sphfam {

DigitMatrix::DigitMatrix(int size) : n(size) {
  if (size < 0 || size > kMaxVertices) throw std::invalid_argument("DigitMatrix: too many vertices");
}

std::vector<std::uint8_t> DigitMatrix::reading(const std::vector<int>& order) const {
  std::vector<std::uint8_t> out;
  out.reserve(n * (n - 1) / 2);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out.push_back(at(order[a], order[b]));
  return out;
}

namespace {

// Ordered partition of the not-yet-placed vertices.
struct Cells {
  std::array<std::int8_t, kMaxVertices> seq{};
  std::array<std::int8_t, kMaxVertices + 1> start{};
  int count = 0;  // number of cells
  int size = 0;   // number of vertices
};

class Search {
 public:
  Search(const DigitMatrix& m, bool collect_all) : m_(m), n_(m.n), all_(collect_all) {
    for (int u = 0; u < n_; ++u) {
      twin_[u] = static_cast<std::int8_t>(u);
      for (int v = 0; v < u; ++v) {
        bool same = true;
        for (int w = 0; w < n_ && same; ++w)
          if (w != u && w != v && m.at(u, w) != m.at(v, w)) same = false;
        if (same) {
          twin_[u] = twin_[v];
          break;
        }
      }
    }
  }

  void run() {
    Cells root;
    root.size = n_;
    root.count = n_ > 0 ? 1 : 0;
    for (int i = 0; i < n_; ++i) root.seq[i] = static_cast<std::int8_t>(i);
    root.start[0] = 0;
    root.start[1] = static_cast<std::int8_t>(n_);
    cur_.assign(n_ * (n_ - 1) / 2, 0);
    order_.assign(n_, 0);
    if (n_ == 0) {
      found_ = true;
      results_.push_back({});
      return;
    }
    visit(root, 0, 0);
  }

  const std::vector<std::uint8_t>& best() const { return best_; }
  std::vector<std::vector<int>>& results() { return results_; }

 private:
  // Emission of row k if v is placed next: for each cell, sorted digits to v.
  void emission(const Cells& c, int v, std::uint8_t* out) const {
    int pos = 0;
    for (int cell = 0; cell < c.count; ++cell) {
      const int begin = pos;
      for (int i = c.start[cell]; i < c.start[cell + 1]; ++i) {
        if (c.seq[i] == v) continue;
        out[pos++] = m_.at(v, c.seq[i]);
      }
      std::sort(out + begin, out + pos);
    }
  }

  void visit(const Cells& c, int k, int offset) {
    const int len = n_ - 1 - k;
    if (len == 0) {
      order_[k] = c.seq[0];
      leaf();
      return;
    }
    std::array<std::uint8_t, kMaxVertices> em{};
    std::array<std::uint8_t, kMaxVertices> min_em{};
    std::array<std::int8_t, kMaxVertices> tied{};
    int n_tied = 0;
    for (int i = c.start[0]; i < c.start[1]; ++i) {
      const int v = c.seq[i];
      emission(c, v, em.data());
      const int cmp = n_tied == 0 ? -1 : std::memcmp(em.data(), min_em.data(), len);
      if (cmp < 0) {
        min_em = em;
        n_tied = 0;
      }
      if (cmp <= 0) tied[n_tied++] = static_cast<std::int8_t>(v);
    }
    std::memcpy(cur_.data() + offset, min_em.data(), len);
    if (found_) {
      const int cmp = std::memcmp(cur_.data(), best_.data(), offset + len);
      if (cmp > 0) return;
    }
    std::array<bool, kMaxVertices> twin_seen{};
    for (int t = 0; t < n_tied; ++t) {
      const int v = tied[t];
      if (!all_) {
        if (twin_seen[twin_[v]]) continue;
        twin_seen[twin_[v]] = true;
      }
      // Re-check against best: a sibling may have improved it.
      if (found_ && t > 0) {
        std::memcpy(cur_.data() + offset, min_em.data(), len);
        if (std::memcmp(cur_.data(), best_.data(), offset + len) > 0) return;
      }
      order_[k] = v;
      visit(refine(c, v), k + 1, offset + len);
    }
  }

  Cells refine(const Cells& c, int v) const {
    Cells out;
    out.size = c.size - 1;
    int pos = 0;
    for (int cell = 0; cell < c.count; ++cell) {
      // Counting sort of the cell members by digit to v.
      std::array<std::int8_t, kMaxVertices> members{};
      int nm = 0;
      for (int i = c.start[cell]; i < c.start[cell + 1]; ++i)
        if (c.seq[i] != v) members[nm++] = c.seq[i];
      if (nm == 0) continue;
      std::stable_sort(members.begin(), members.begin() + nm,
                       [&](std::int8_t a, std::int8_t b) { return m_.at(v, a) < m_.at(v, b); });
      for (int i = 0; i < nm; ++i) {
        if (i == 0 || m_.at(v, members[i]) != m_.at(v, members[i - 1])) out.start[out.count++] = static_cast<std::int8_t>(pos);
        out.seq[pos++] = members[i];
      }
    }
    out.start[out.count] = static_cast<std::int8_t>(pos);
    return out;
  }

  void leaf() {
    const int cmp = found_ ? std::memcmp(cur_.data(), best_.data(), cur_.size()) : -1;
    if (cmp < 0) {
      best_ = cur_;
      found_ = true;
      results_.clear();
    }
    if (cmp <= 0 && (all_ || results_.empty())) results_.emplace_back(order_.begin(), order_.end());
  }

  const DigitMatrix& m_;
  const int n_;
  const bool all_;
  std::array<std::int8_t, kMaxVertices> twin_{};
  std::vector<std::uint8_t> cur_;
  std::vector<std::uint8_t> best_;
  std::vector<int> order_;
  bool found_ = false;
  std::vector<std::vector<int>> results_;
};

}  // namespace

CanonicalForm canonical_form(const DigitMatrix& m) {
  Search s(m, false);
  s.run();
  return {s.best(), std::move(s.results().front())};
}

std::vector<std::vector<int>> optimal_orderings(const DigitMatrix& m, std::vector<std::uint8_t>* digits) {
  Search s(m, true);
  s.run();
  if (digits) *digits = s.best();
  return std::move(s.results());
}

}  // namespace sphfam
