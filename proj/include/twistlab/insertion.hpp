#pragma once

#include <algorithm>
#include <vector>

#include "twistlab/twist.hpp"

namespace twistlab {

// A classical twist whose relevant pipes carry an increasing relabeling.
struct labeled_twist {
  twist t;
  std::vector<int> labels;  // strictly increasing, size n

  static labeled_twist empty(int k) { return {twist(shape::classical_shape(k, 0), {}), {}}; }

  int rank_of(int label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    return it != labels.end() && *it == label ? int(it - labels.begin()) + 1 : -1;
  }
};

// Pipe insertion: splice a new row m and column m+k into the staircase and
// route the new pipe along the freed boundary staircase.  The previous tiles
// keep their relative positions.
inline labeled_twist pipe_insert(const labeled_twist& lt, int q) {
  const shape& sh = lt.t.sh();
  if (!sh.classical()) raise(errc::invariant_violation, "pipe insertion needs the classical shape");
  if (std::binary_search(lt.labels.begin(), lt.labels.end(), q))
    raise(errc::duplicate_label, "label " + std::to_string(q));
  int k = sh.k, n = sh.n;
  int m = int(std::lower_bound(lt.labels.begin(), lt.labels.end(), q) - lt.labels.begin()) + 1;

  auto nsh = shape::classical_shape(k, n + 1);
  std::vector<uint16_t> elbows;
  for (auto id : lt.t.elbows()) {
    int r = sh.row_of(id), c = sh.col_of(id);
    int nr = r + (r >= m ? 1 : 0), nc = c + (c >= m + k ? 1 : 0);
    elbows.push_back((uint16_t)nsh->idx(nr, nc));
  }
  // Boundary elbows of the old diagonal that become interior bends of the new pipe.
  for (int d = m; d <= m + k - 1; ++d) {
    int id = nsh->idx(d + 1, d);
    if (nsh->interior(id)) elbows.push_back((uint16_t)id);
  }
  labeled_twist out{twist(nsh, std::move(elbows)), lt.labels};
  out.labels.insert(std::lower_bound(out.labels.begin(), out.labels.end(), q), q);
  trace(out.t);
  return out;
}

// Pipe deletion of a source: drop the pipe's row and column.
inline labeled_twist pipe_delete(const labeled_twist& lt, int q) {
  const shape& sh = lt.t.sh();
  if (!sh.classical()) raise(errc::invariant_violation, "pipe deletion needs the classical shape");
  int m = lt.rank_of(q);
  if (m < 0) raise(errc::not_a_source, "label " + std::to_string(q) + " not present");
  contact_graph g = contact_graph::of(lt.t);
  for (auto [se, wn] : g.arcs)
    if (wn == m) raise(errc::not_a_source, "pipe " + std::to_string(q) + " is not a source");
  int k = sh.k, n = sh.n;
  auto nsh = shape::classical_shape(k, n - 1);
  std::vector<uint16_t> elbows;
  for (auto id : lt.t.elbows()) {
    int r = sh.row_of(id), c = sh.col_of(id);
    if (r == m || c == m + k) continue;  // the deleted pipe's own row and column
    int nr = r - (r > m ? 1 : 0), nc = c - (c > m + k ? 1 : 0);
    int nid = nsh->idx(nr, nc);
    if (nsh->forced_elbow(nid)) continue;  // staircase bends rejoin the boundary
    elbows.push_back((uint16_t)nid);
  }
  labeled_twist out{twist(nsh, std::move(elbows)), lt.labels};
  out.labels.erase(std::find(out.labels.begin(), out.labels.end(), q));
  trace(out.t);
  return out;
}

// The insertion surjection onto acyclic twists: insert the entries of the
// permutation from right to left.
inline twist insert_permutation(int k, const perm& t) {
  labeled_twist lt = labeled_twist::empty(k);
  for (int i = t.size() - 1; i >= 0; --i) lt = pipe_insert(lt, t.at(i));
  return lt.t;
}

// Linear extensions of the contact graph = the insertion fiber.
inline std::vector<perm> fiber(const twist& t) {
  contact_graph g = contact_graph::of(t);
  if (!g.acyclic) raise(errc::cyclic_twist, "fiber of a cyclic twist");
  return linear_extensions(g.closure);
}

inline perm fiber_min(const twist& t) {
  contact_graph g = contact_graph::of(t);
  if (!g.acyclic) raise(errc::cyclic_twist, "fiber of a cyclic twist");
  // greedy linear extension: repeatedly take the smallest available value
  std::vector<mask_t> pred(g.n, 0);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if ((g.closure.above[i] >> j) & 1) pred[j] |= bit(i);
  std::vector<int> word;
  mask_t placed = 0;
  for (int step = 0; step < g.n; ++step)
    for (int v = 0; v < g.n; ++v)
      if (!((placed >> v) & 1) && (pred[v] & ~placed) == 0) {
        placed |= bit(v);
        word.push_back(v + 1);
        break;
      }
  return perm(std::move(word));
}

inline perm fiber_max(const twist& t) {
  contact_graph g = contact_graph::of(t);
  if (!g.acyclic) raise(errc::cyclic_twist, "fiber of a cyclic twist");
  std::vector<mask_t> pred(g.n, 0);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if ((g.closure.above[i] >> j) & 1) pred[j] |= bit(i);
  std::vector<int> word;
  mask_t placed = 0;
  for (int step = 0; step < g.n; ++step)
    for (int v = g.n - 1; v >= 0; --v)
      if (!((placed >> v) & 1) && (pred[v] & ~placed) == 0) {
        placed |= bit(v);
        word.push_back(v + 1);
        break;
      }
  return perm(std::move(word));
}

}  // namespace twistlab
