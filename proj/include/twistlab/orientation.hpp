#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "twistlab/core.hpp"
#include "twistlab/perm.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

// Orientation of the graph G^k(n) (edges {i,j} with |i-j| <= k), possibly
// partial.  Stored densely by (i, j-i).  toward_high(i,j) = +1 encodes the
// arc i -> j, -1 encodes j -> i, 0 leaves {i,j} unoriented.  The minimum of
// the increasing flip order is the all +1 orientation.
struct orientation {
  int k = 0, n = 0;
  std::vector<int8_t> d;  // size (n-1)*k, index (i-1)*k + (j-i-1), only j <= n kept

  orientation() = default;
  orientation(int kk, int nn) : k(kk), n(nn), d((nn > 0 ? (nn - 1) * kk : 0), 0) {}

  bool has_edge(int i, int j) const {  // i < j
    return j - i <= k && j <= n && i >= 1;
  }
  int index(int i, int j) const { return (i - 1) * k + (j - i - 1); }
  int8_t get(int i, int j) const { return d[index(i, j)]; }
  void set(int i, int j, int8_t v) { d[index(i, j)] = v; }

  bool total() const {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= std::min(n, i + k); ++j)
        if (get(i, j) == 0) return false;
    return true;
  }

  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= std::min(n, i + k); ++j) {
        if (get(i, j) > 0) out.emplace_back(i, j);
        if (get(i, j) < 0) out.emplace_back(j, i);
      }
    return out;
  }

  bool acyclic() const { return poset::try_closure_of(n, arcs()).n == n || n == 0; }
  poset closure() const { return poset::closure_of(n, arcs()); }

  friend bool operator==(const orientation& a, const orientation& b) {
    return a.k == b.k && a.n == b.n && a.d == b.d;
  }
  friend bool operator<(const orientation& a, const orientation& b) {
    return std::tie(a.k, a.n, a.d) < std::tie(b.k, b.n, b.d);
  }

  std::string str() const {
    std::string s;
    for (auto [a, b] : arcs()) {
      if (!s.empty()) s += ' ';
      s += std::to_string(a) + ">" + std::to_string(b);
    }
    return s;
  }
};

// Face-lattice order on (partial) orientations: the minimum orients every
// edge toward the higher label, so a <= b iff a.d >= b.d pointwise.
inline bool orientation_leq(const orientation& a, const orientation& b) {
  if (a.k != b.k || a.n != b.n) raise(errc::size_mismatch, "orientation_leq");
  for (size_t e = 0; e < a.d.size(); ++e)
    if (a.d[e] < b.d[e]) return false;
  return true;
}

// k-recoil scheme of a permutation.
inline orientation recoil_scheme(int k, const perm& t) {
  orientation o(k, t.size());
  for (int i = 1; i <= t.size(); ++i)
    for (int j = i + 1; j <= std::min(t.size(), i + k); ++j)
      o.set(i, j, t.pos_of(i) < t.pos_of(j) ? +1 : -1);
  return o;
}

// k-canopy scheme of an acyclic twist: follow the contact order.
inline orientation canopy(const twist& t) {
  contact_graph g = contact_graph::of(t);
  if (!g.acyclic) raise(errc::cyclic_twist, "canopy of a cyclic twist");
  orientation o(t.k(), t.n());
  for (int i = 1; i <= t.n(); ++i)
    for (int j = i + 1; j <= std::min(t.n(), i + t.k()); ++j) {
      if (g.closure.less(i, j)) o.set(i, j, +1);
      else if (g.closure.less(j, i)) o.set(i, j, -1);
      else
        raise(errc::invariant_violation, "pipes at distance <= k are incomparable");
    }
  return o;
}

inline std::vector<perm> orientation_fiber(const orientation& o) {
  return linear_extensions(o.closure());
}

inline long long count_acyclic_orientations(int k, int n) {
  if (n <= k) return factorial(n);
  long long c = factorial(k);
  for (int i = 0; i < n - k; ++i) c *= (k + 1);
  return c;
}

// Enumerate total acyclic orientations: scan vertices upward; vertex v sits in
// one of the positions of the linear order of the clique {v-k..v-1, v}.
inline std::vector<orientation> enumerate_acyclic_orientations(int k, int n) {
  std::vector<orientation> out;
  // window = labels v-1, v-2, ... ordered by current relative order (highest first position? we
  // keep the full relative order of the last min(k, v-1) vertices as a list, most recent ordering).
  std::function<void(int, std::vector<int>&, orientation&)> rec =
      [&](int v, std::vector<int>& window, orientation& o) {
        if (v > n) {
          out.push_back(o);
          return;
        }
        int w = static_cast<int>(window.size());  // = min(k, v-1)
        for (int slot = 0; slot <= w; ++slot) {
          // v is inserted so that exactly `slot` window vertices come before it
          for (int t = 0; t < w; ++t) {
            int u = window[t];
            o.set(u, v, t < slot ? +1 : -1);
          }
          std::vector<int> next = window;
          next.insert(next.begin() + slot, v);
          if ((int)next.size() > k)  // v-k leaves the window
            next.erase(std::find(next.begin(), next.end(), v - k));
          rec(v + 1, next, o);
        }
      };
  orientation o(k, n);
  std::vector<int> window;
  if (n == 0) return {o};
  rec(1, window, o);
  // canonical order
  std::sort(out.begin(), out.end());
  return out;
}

// Restriction G^k(n) -> G^l(n), l <= k: keep the short edges.
inline orientation restrict_orientation(int l, const orientation& o) {
  if (l > o.k) raise(errc::size_mismatch, "can only restrict to smaller k");
  orientation r(l, o.n);
  for (int i = 1; i <= o.n; ++i)
    for (int j = i + 1; j <= std::min(o.n, i + l); ++j) r.set(i, j, o.get(i, j));
  return r;
}

// Increasing flips: reverse one edge currently oriented toward the higher label.
inline std::vector<orientation> orientation_increasing_flips(const orientation& o) {
  std::vector<orientation> out;
  for (int i = 1; i <= o.n; ++i)
    for (int j = i + 1; j <= std::min(o.n, i + o.k); ++j)
      if (o.get(i, j) > 0) {
        orientation r = o;
        r.set(i, j, -1);
        if (r.acyclic()) out.push_back(r);
      }
  return out;
}

}  // namespace twistlab
