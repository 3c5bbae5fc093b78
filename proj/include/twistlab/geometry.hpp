#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "twistlab/core.hpp"
#include "twistlab/insertion.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/orientation.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

using vertex_coords = std::vector<rat>;

inline rat coord_sum(const vertex_coords& x) {
  rat s = 0;
  for (const auto& c : x) s = s + c;
  return s;
}

// Vertex of the dilated permutahedron k*Perm(n) translated into the
// hyperplane of zero coordinate sum.
inline vertex_coords permutahedron_vertex(int k, const perm& t) {
  int n = t.size();
  vertex_coords x(n);
  for (int i = 1; i <= n; ++i)
    x[i - 1] = rat(k * (t.pos_of(i) + 1)) - rat((long long)k * (n + 1), 2);
  return x;
}

// Edge weight of the deformed zonotope of G^k(n).
inline rat zonotope_weight(int i, int j, int k, int n) {
  int d = std::abs(i - j);
  if (d > k) return 0;
  if (d < k) return n + k - 2 * d;
  long long m = std::min(i, n + 1 - j);
  return m * (n + k - 1 - m);
}

inline vertex_coords zonotope_vertex(int k, const orientation& o) {
  if (!o.total()) raise(errc::invariant_violation, "zonotope vertex needs a total orientation");
  int n = o.n;
  vertex_coords x(n, rat(0));
  rat total = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= std::min(n, i + k); ++j) {
      int head = o.get(i, j) > 0 ? j : i;  // weight goes to the target of the arc
      rat w = zonotope_weight(i, j, k, n);
      x[head - 1] = x[head - 1] + w;
      total = total + w;
    }
  // shift into the zero-sum hyperplane; equals (n-1)(n+3k-2)/6 when k <= 1
  rat shift = total / rat(n);
  for (auto& c : x) c = c - shift;
  return x;
}

// Number of shape boxes over which the pipe passes weakly north of the box's
// top edge within the box's column.
inline std::vector<long long> brick_areas(const twist& t, const trace_data& td) {
  const shape& sh = t.sh();
  int n = sh.n;
  std::vector<long long> area(n, 0);
  for (int p = 1; p <= n; ++p) {
    // reach[c] = highest row of column c whose top edge the pipe touches (0 if none)
    std::vector<int> reach(sh.grid + 1, 0);
    for (auto [box, in] : td.paths[p - 1]) {
      int r = sh.row_of(box), c = sh.col_of(box);
      bool exits_north = (td.tiles[box] != 0) == (in == dir::east);  // elbow+east or cross+north
      reach[c] = std::max(reach[c], exits_north ? r : r - 1);
    }
    for (int c = 1; c <= sh.grid; ++c)
      for (int r = 1; r <= reach[c]; ++r)
        if (sh.in_shape(r, c)) ++area[p - 1];
  }
  return area;
}

// Brick vector: brick areas re-centered by a twist-independent offset so that
// the coordinates of every twist sum to zero.  On the classical shape the
// offset is uniform; on a Cambrian shape each coordinate is centered between
// the minimal and maximal twists.
inline vertex_coords brick_vector(const twist& t) {
  const shape& sh = t.sh();
  auto areas = brick_areas(t, trace(t));
  int n = sh.n;
  vertex_coords x(n);
  if (sh.classical()) {
    twist ref = insert_permutation(sh.k, perm::identity(n));
    auto ref_areas = brick_areas(ref, trace(ref));
    long long total = 0;
    for (auto a : ref_areas) total += a;
    for (int i = 0; i < n; ++i) x[i] = rat(areas[i]) - rat(total, n);
  } else {
    raise(errc::invariant_violation, "use cambrian_brick_vector for signed shapes");
  }
  return x;
}

// Facet normal directions of the brick polytope: proper k-connected 0/1
// sequences (not 0^n or 1^n, no subsequence 1 0^l 1 with l >= k).
inline bool is_proper_k_connected(int k, const std::vector<int>& s) {
  int n = static_cast<int>(s.size());
  int ones = 0;
  for (int v : s) ones += v;
  if (ones == 0 || ones == n) return false;
  int last_one = -1;
  for (int i = 0; i < n; ++i)
    if (s[i] == 1) {
      if (last_one >= 0 && i - last_one - 1 >= k) return false;
      last_one = i;
    }
  return true;
}

inline long long facet_normal_count(int k, int n) {
  long long count = 0;
  std::vector<int> s(n, 0);
  for (long long m = 0; m < (1LL << n); ++m) {
    for (int i = 0; i < n; ++i) s[i] = (m >> i) & 1;
    if (is_proper_k_connected(k, s)) ++count;
  }
  return count;
}

// Coefficient of t^n in t^2 (2 - t^k) / ((1 - 2t + t^{k+1})(1 - t)).
inline long long facet_normal_series_coeff(int k, int n) {
  int deg = n + 1;
  std::vector<long long> num(deg + 1, 0), den(deg + 1, 0);
  num[2] += 2;
  if (2 + k <= deg) num[2 + k] -= 1;
  // (1 - 2t + t^{k+1}) * (1 - t)
  std::vector<long long> a(deg + 1, 0);
  a[0] = 1;
  a[1] = -2;
  if (k + 1 <= deg) a[k + 1] += 1;
  den[0] = a[0];
  for (int i = 1; i <= deg; ++i) den[i] = a[i] - a[i - 1];
  // power series division num/den
  std::vector<long long> q(deg + 1, 0);
  for (int i = 0; i <= deg; ++i) {
    long long acc = num[i];
    for (int j = 1; j <= i; ++j) acc -= den[j] * q[i - j];
    q[i] = acc / den[0];
  }
  return q[n];
}

// Incidence cone / braid cone pair of a strict order relation on [n].
struct poly_cone {
  int n = 0;
  std::vector<std::pair<int, int>> relations;  // i < j in the order: constraint x_i <= x_j

  static poly_cone of(const poset& p) {
    poly_cone c;
    c.n = p.n;
    for (int i = 1; i <= p.n; ++i)
      for (int j = 1; j <= p.n; ++j)
        if (p.less(i, j)) c.relations.emplace_back(i, j);
    return c;
  }
  static poly_cone of(const perm& t) { return of(poset::chain_of(t)); }
  static poly_cone of(const twist& t) {
    contact_graph g = contact_graph::of(t);
    if (!g.acyclic) raise(errc::cyclic_input, "cone of a cyclic twist");
    return of(g.closure);
  }
  static poly_cone of(const orientation& o) { return of(o.closure()); }

  // Incidence cone generators e_i - e_j for i < j in the order.
  std::vector<vertex_coords> incidence_generators() const {
    std::vector<vertex_coords> gens;
    for (auto [i, j] : relations) {
      vertex_coords v(n, rat(0));
      v[i - 1] = 1;
      v[j - 1] = rat(0) - rat(1);
      gens.push_back(std::move(v));
    }
    return gens;
  }

  bool braid_contains(const vertex_coords& x) const {
    for (auto [i, j] : relations)
      if (!(x[i - 1] <= x[j - 1])) return false;
    return true;
  }

  // Generators of the braid cone: projections of the indicators of the
  // proper nonempty order filters.
  std::vector<vertex_coords> braid_generators() const {
    std::vector<mask_t> pred(n, 0);
    for (auto [i, j] : relations) pred[j - 1] |= bit(i - 1);
    std::vector<vertex_coords> gens;
    for (mask_t f = 1; f + 1 < (mask_t{1} << n); ++f) {
      // f is a filter iff no member has a successor outside f
      bool filter = true;
      for (int i = 1; i <= n && filter; ++i)
        if ((f >> (i - 1)) & 1)
          for (auto [a, b] : relations)
            if (a == i && !((f >> (b - 1)) & 1)) { filter = false; break; }
      if (!filter) continue;
      int size = __builtin_popcountll(f);
      vertex_coords v(n);
      for (int i = 0; i < n; ++i)
        v[i] = ((f >> i) & 1) ? rat(n - size) : rat(0) - rat(size);
      gens.push_back(std::move(v));
    }
    return gens;
  }
};

// Braid cone containment via generators against inequalities.
inline bool braid_cone_subset(const poly_cone& inner, const poly_cone& outer) {
  for (const auto& g : inner.braid_generators())
    if (!outer.braid_contains(g)) return false;
  return true;
}

// Increasing flips move the brick vector strictly along U = sum (n+1-2i) e_i.
inline bool skeleton_orientation_check(int k, int n, budget bud = budget()) {
  auto acyclic = enumerate_twists(k, n, true, bud);
  for (const auto& t : acyclic) {
    vertex_coords xt = brick_vector(t);
    for (auto& mv : flip_neighbors(t)) {
      if (!mv.increasing || !is_acyclic(mv.result)) continue;
      vertex_coords xr = brick_vector(mv.result);
      rat dot = 0;
      for (int i = 1; i <= n; ++i) dot = dot + rat(n + 1 - 2 * i) * (xr[i - 1] - xt[i - 1]);
      if (!(rat(0) < dot)) return false;
    }
  }
  return true;
}

}  // namespace twistlab
