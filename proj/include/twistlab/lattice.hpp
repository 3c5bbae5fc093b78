#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>
#include <vector>

#include "twistlab/insertion.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

struct bitvec {
  std::vector<uint64_t> w;
  explicit bitvec(int n = 0) : w((n + 63) / 64, 0) {}
  void set(int i) { w[i >> 6] |= uint64_t{1} << (i & 63); }
  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bitvec& operator|=(const bitvec& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    return *this;
  }
  friend bitvec operator&(const bitvec& a, const bitvec& b) {
    bitvec r;
    r.w.resize(a.w.size());
    for (size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
  }
  bool subset_of(const bitvec& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += __builtin_popcountll(x);
    return c;
  }
  template <typename F>
  void for_each(F f) const {
    for (size_t b = 0; b < w.size(); ++b) {
      uint64_t x = w[b];
      while (x) {
        int i = __builtin_ctzll(x);
        f(static_cast<int>(b * 64 + i));
        x &= x - 1;
      }
    }
  }
};

// A finite poset given by a cover DAG, with order bitsets and meet/join.
struct finite_lattice {
  int size = 0;
  std::vector<std::vector<int>> up_covers;  // Hasse diagram (transitively reduced)
  std::vector<bitvec> up;                   // up[i] = { j : i <= j }, reflexive
  std::vector<bitvec> down;

  static finite_lattice from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    finite_lattice L;
    L.size = n;
    std::vector<std::vector<int>> adj(n);
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      ++indeg[b];
    }
    // topological order, then reachability by merging bitsets
    std::deque<int> q;
    for (int i = 0; i < n; ++i)
      if (!indeg[i]) q.push_back(i);
    std::vector<int> topo;
    auto deg = indeg;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      topo.push_back(v);
      for (int u : adj[v])
        if (--deg[u] == 0) q.push_back(u);
    }
    if ((int)topo.size() != n) raise(errc::cyclic_input, "order relation has a cycle");
    L.up.assign(n, bitvec(n));
    L.down.assign(n, bitvec(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      int v = *it;
      L.up[v].set(v);
      for (int u : adj[v]) L.up[v] |= L.up[u];
    }
    for (int v : topo) {
      L.down[v].set(v);
      for (int u : adj[v]) L.down[u] |= L.down[v];
    }
    // transitive reduction: keep edge a->b iff the open interval (a,b) is empty
    L.up_covers.assign(n, {});
    std::vector<std::pair<int, int>> uniq = edges;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (auto [a, b] : uniq) {
      bitvec between = L.up[a] & L.down[b];
      if (between.count() == 2) L.up_covers[a].push_back(b);
    }
    return L;
  }

  bool leq(int a, int b) const { return up[a].get(b); }

  int meet(int a, int b) const {
    bitvec common = down[a] & down[b];
    int best = -1;
    bool unique = true;
    common.for_each([&](int m) {
      if (best == -1) best = m;
      else if (leq(best, m)) best = m;
    });
    if (best < 0) return -1;
    common.for_each([&](int m) {
      if (!leq(m, best)) unique = false;
    });
    return unique ? best : -1;
  }

  int join(int a, int b) const {
    bitvec common = up[a] & up[b];
    int best = -1;
    bool unique = true;
    common.for_each([&](int m) {
      if (best == -1) best = m;
      else if (leq(m, best)) best = m;
    });
    if (best < 0) return -1;
    common.for_each([&](int m) {
      if (!leq(best, m)) unique = false;
    });
    return unique ? best : -1;
  }

  bool is_lattice() const {
    for (int a = 0; a < size; ++a)
      for (int b = a + 1; b < size; ++b)
        if (meet(a, b) < 0 || join(a, b) < 0) return false;
    return true;
  }

  int cover_count() const {
    int c = 0;
    for (const auto& v : up_covers) c += (int)v.size();
    return c;
  }

  int minimum() const {
    for (int i = 0; i < size; ++i)
      if (down[i].count() == 1) {
        if (up[i].count() == size) return i;
      }
    return -1;
  }
  int maximum() const {
    for (int i = 0; i < size; ++i)
      if (up[i].count() == 1 && down[i].count() == size) return i;
    return -1;
  }
};

// Order isomorphism check along a bijection f: A -> B (by index).
inline bool order_isomorphic(const finite_lattice& A, const finite_lattice& B,
                             const std::vector<int>& f) {
  if (A.size != B.size || (int)f.size() != A.size) return false;
  for (int a = 0; a < A.size; ++a)
    for (int b = 0; b < A.size; ++b)
      if (A.leq(a, b) != B.leq(f[a], f[b])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Twist enumeration.

// Hankel determinant det(C_{n+2k-i-j})_{i,j in [k]} counting all (k,n)-twists.
inline long long hankel_twist_count(int k, int n) {
  if (k == 0) return 1;
  std::vector<std::vector<__int128>> m(k, std::vector<__int128>(k));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) m[i - 1][j - 1] = catalan(n + 2 * k - i - j);
  // Bareiss fraction-free elimination
  __int128 prev = 1;
  int sign = 1;
  for (int p = 0; p < k - 1; ++p) {
    if (m[p][p] == 0) {
      int s = -1;
      for (int r = p + 1; r < k; ++r)
        if (m[r][p] != 0) { s = r; break; }
      if (s < 0) return 0;
      std::swap(m[p], m[s]);
      sign = -sign;
    }
    for (int r = p + 1; r < k; ++r)
      for (int c = p + 1; c < k; ++c)
        m[r][c] = (m[r][c] * m[p][p] - m[r][p] * m[p][c]) / prev;
    prev = m[p][p];
  }
  return sign * static_cast<long long>(m[k - 1][k - 1]);
}

// All (k,n)-twists of a shape by flip search from an arbitrary seed; with
// acyclic_only, moves are restricted to acyclic twists (the flip lattice is
// connected through its Hasse diagram).
inline std::vector<twist> enumerate_twists_of(const twist& seed, bool acyclic_only,
                                              budget bud = budget()) {
  std::unordered_set<twist, twist_hash> seen;
  std::deque<twist> queue;
  auto push = [&](const twist& t) {
    if (seen.insert(t).second) {
      bud.charge();
      queue.push_back(t);
    }
  };
  push(seed);
  while (!queue.empty()) {
    twist t = queue.front();
    queue.pop_front();
    for (auto& mv : flip_neighbors(t)) {
      if (acyclic_only && !is_acyclic(mv.result)) continue;
      push(mv.result);
    }
  }
  std::vector<twist> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<twist> enumerate_twists(int k, int n, bool acyclic_only,
                                           budget bud = budget()) {
  twist seed = insert_permutation(k, perm::identity(n));
  return enumerate_twists_of(seed, acyclic_only, bud);
}

// Increasing flip lattice on the acyclic (k,n)-twists.
struct twist_lattice {
  std::vector<twist> elems;  // canonical order
  finite_lattice order;

  int index_of(const twist& t) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), t);
    return it != elems.end() && *it == t ? int(it - elems.begin()) : -1;
  }
};

inline twist_lattice increasing_flip_lattice_of(std::vector<twist> elems) {
  twist_lattice L;
  L.elems = std::move(elems);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < (int)L.elems.size(); ++i)
    for (auto& mv : flip_neighbors(L.elems[i])) {
      if (!mv.increasing) continue;
      auto it = std::lower_bound(L.elems.begin(), L.elems.end(), mv.result);
      if (it != L.elems.end() && *it == mv.result)
        edges.emplace_back(i, int(it - L.elems.begin()));
    }
  L.order = finite_lattice::from_edges((int)L.elems.size(), edges);
  return L;
}

inline twist_lattice increasing_flip_lattice(int k, int n, budget bud = budget()) {
  return increasing_flip_lattice_of(enumerate_twists(k, n, true, bud));
}

// ---------------------------------------------------------------------------
// Weak order and quotients.

struct weak_order_lattice {
  std::vector<perm> elems;  // lex order
  finite_lattice order;

  int index_of(const perm& t) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), t);
    return int(it - elems.begin());
  }
};

inline weak_order_lattice weak_order(int n) {
  weak_order_lattice W;
  W.elems = all_perms(n);
  std::sort(W.elems.begin(), W.elems.end());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < (int)W.elems.size(); ++i)
    for (const auto& u : weak_covers(W.elems[i])) edges.emplace_back(i, W.index_of(u));
  W.order = finite_lattice::from_edges((int)W.elems.size(), edges);
  return W;
}

// Quotient of a poset by a partition: X <= Y iff x <= y for some reps.
inline finite_lattice quotient_order(const finite_lattice& base,
                                     const std::vector<int>& class_of, int num_classes) {
  std::vector<bitvec> members(num_classes, bitvec(base.size));
  for (int i = 0; i < base.size; ++i) members[class_of[i]].set(i);
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < num_classes; ++x) {
    bitvec reach(base.size);
    members[x].for_each([&](int i) { reach |= base.up[i]; });
    for (int y = 0; y < num_classes; ++y)
      if (y != x && (reach & members[y]).count() > 0) edges.emplace_back(x, y);
  }
  return finite_lattice::from_edges(num_classes, edges);
}

}  // namespace twistlab
