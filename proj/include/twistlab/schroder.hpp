#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "twistlab/hopf.hpp"
#include "twistlab/insertion.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/orientation.hpp"

namespace twistlab {

// Ordered partition of [n] into nonempty blocks.
struct ordered_partition {
  std::vector<std::vector<int>> blocks;  // each block sorted increasingly

  ordered_partition() = default;
  explicit ordered_partition(std::vector<std::vector<int>> b) : blocks(std::move(b)) {
    for (auto& blk : blocks) std::sort(blk.begin(), blk.end());
  }
  static ordered_partition of_perm(const perm& t) {
    std::vector<std::vector<int>> b;
    for (int i = 0; i < t.size(); ++i) b.push_back({t.at(i)});
    return ordered_partition(std::move(b));
  }

  int size() const {
    int n = 0;
    for (auto& b : blocks) n += (int)b.size();
    return n;
  }
  int parts() const { return (int)blocks.size(); }

  int block_of(int v) const {
    for (int i = 0; i < parts(); ++i)
      if (std::binary_search(blocks[i].begin(), blocks[i].end(), v)) return i;
    raise(errc::invariant_violation, "value missing from partition");
  }

  // -1 / 0 / +1 depending on the relative position of the blocks of i < j.
  int coinv(int i, int j) const {
    int bi = block_of(i), bj = block_of(j);
    return bi < bj ? -1 : bi > bj ? 1 : 0;
  }

  friend bool operator==(const ordered_partition& a, const ordered_partition& b) {
    return a.blocks == b.blocks;
  }
  friend bool operator<(const ordered_partition& a, const ordered_partition& b) {
    return a.blocks < b.blocks;
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < parts(); ++i) {
      if (i) s += '|';
      for (int v : blocks[i]) s += std::to_string(v);
    }
    return s;
  }
};

inline ordered_partition parse_partition(const std::string& s) {
  std::vector<std::vector<int>> blocks(1);
  for (char c : s) {
    if (c == '|') blocks.push_back({});
    else if (c >= '1' && c <= '9') blocks.back().push_back(c - '0');
    else raise(errc::parse_error, "bad ordered partition character");
  }
  ordered_partition p(std::move(blocks));
  std::vector<int> all;
  for (auto& b : p.blocks) {
    if (b.empty()) raise(errc::parse_error, "empty block");
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  for (int i = 0; i < (int)all.size(); ++i)
    if (all[i] != i + 1) raise(errc::parse_error, "blocks do not partition [n]");
  return p;
}

inline std::vector<ordered_partition> all_ordered_partitions(int n, budget bud = budget()) {
  std::vector<ordered_partition> out;
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int v) {
    if (v > n) {
      bud.charge();
      out.emplace_back(blocks);
      return;
    }
    for (size_t i = 0; i <= blocks.size(); ++i) {
      if (i < blocks.size()) {
        blocks[i].push_back(v);
        rec(v + 1);
        blocks[i].pop_back();
      } else {
        for (size_t at = 0; at <= blocks.size(); ++at) {
          blocks.insert(blocks.begin() + at, {v});
          rec(v + 1);
          blocks.erase(blocks.begin() + at);
        }
      }
    }
  };
  rec(1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool partition_leq(const ordered_partition& a, const ordered_partition& b) {
  if (a.size() != b.size()) raise(errc::size_mismatch, "partition_leq");
  int n = a.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (a.coinv(i, j) > b.coinv(i, j)) return false;
  return true;
}

inline bool block_ll(const std::vector<int>& x, const std::vector<int>& y) {
  return x.back() < y.front();  // every element of x below every element of y
}

// Cover moves of the weak order on ordered partitions.
inline std::vector<ordered_partition> partition_covers(const ordered_partition& p) {
  std::vector<ordered_partition> out;
  for (int i = 0; i + 1 < p.parts(); ++i) {
    if (block_ll(p.blocks[i], p.blocks[i + 1])) {  // merge an increasing pair
      std::vector<std::vector<int>> b = p.blocks;
      b[i].insert(b[i].end(), b[i + 1].begin(), b[i + 1].end());
      std::sort(b[i].begin(), b[i].end());
      b.erase(b.begin() + i + 1);
      out.emplace_back(std::move(b));
    }
  }
  for (int i = 0; i < p.parts(); ++i) {  // split a block into a decreasing pair
    const auto& blk = p.blocks[i];
    for (size_t cut = 1; cut < blk.size(); ++cut) {
      std::vector<int> lo(blk.begin(), blk.begin() + cut), hi(blk.begin() + cut, blk.end());
      std::vector<std::vector<int>> b = p.blocks;
      b[i] = hi;
      b.insert(b.begin() + i + 1, lo);
      out.emplace_back(std::move(b));
    }
  }
  return out;
}

struct partition_lattice {
  std::vector<ordered_partition> elems;
  finite_lattice order;
  int index_of(const ordered_partition& p) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), p);
    return it != elems.end() && *it == p ? int(it - elems.begin()) : -1;
  }
};

inline partition_lattice partition_weak_order(int n, budget bud = budget()) {
  partition_lattice L;
  L.elems = all_ordered_partitions(n, bud);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < (int)L.elems.size(); ++i)
    for (const auto& q : partition_covers(L.elems[i])) edges.emplace_back(i, L.index_of(q));
  L.order = finite_lattice::from_edges((int)L.elems.size(), edges);
  return L;
}

// ---------------------------------------------------------------------------
// Hypertwists: a twist with pipes merged along connected sets.  Keyed by the
// part family and the surviving elbow boxes; the tile picture is the merged
// one (elbows internal to a part became crossings).

struct hyper_twist {
  std::shared_ptr<const shape> sh;
  std::vector<std::vector<int>> parts;   // sorted blocks, ordered by minimum
  std::vector<uint16_t> elbows;          // surviving interior elbows

  int n() const { return sh->n; }
  int k() const { return sh->k; }

  friend bool operator==(const hyper_twist& a, const hyper_twist& b) {
    return a.k() == b.k() && a.sh->sig == b.sh->sig && a.parts == b.parts && a.elbows == b.elbows;
  }
  friend bool operator<(const hyper_twist& a, const hyper_twist& b) {
    return std::tie(a.parts, a.elbows) < std::tie(b.parts, b.elbows);
  }

  int part_of(int pipe) const {
    for (int i = 0; i < (int)parts.size(); ++i)
      if (std::binary_search(parts[i].begin(), parts[i].end(), pipe)) return i;
    raise(errc::invariant_violation, "pipe missing from parts");
  }

  bool trivial() const { return (int)parts.size() == n(); }

  std::string str() const {
    std::string s = "H(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += '|';
      for (int v : parts[i]) s += std::to_string(v);
    }
    s += ";";
    for (size_t i = 0; i < elbows.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(sh->row_of(elbows[i])) + "," + std::to_string(sh->col_of(elbows[i]));
    }
    return s + ")";
  }
};

// Contracted contact graph, computed by tracing the merged tile picture.
struct hyper_contact {
  int parts = 0;
  std::vector<std::pair<int, int>> arcs;  // (from part, to part), 1-based part ids
  bool acyclic = false;
  poset closure;  // on the parts, valid when acyclic
};

inline hyper_contact hyper_contact_of(const hyper_twist& h) {
  const shape& sh = *h.sh;
  int cells = sh.cells();
  std::vector<uint8_t> tiles(cells, 0);
  for (int id = 0; id < cells; ++id)
    if (sh.in_shape(sh.row_of(id), sh.col_of(id)) && sh.forced_elbow(id)) tiles[id] = 1;
  for (auto e : h.elbows) tiles[e] = 1;
  std::vector<int> strand_a(cells, 0), strand_b(cells, 0);
  for (int p = 1; p <= sh.n; ++p) {
    auto [box, d] = sh.entry(p);
    while (true) {
      int& slot = (d == dir::east) ? strand_a[box] : strand_b[box];
      if (slot) raise(errc::invariant_violation, "merged picture reuses a strand");
      slot = p;
      dir out = tiles[box] ? (d == dir::east ? dir::north : dir::east) : d;
      int xp = sh.exit_pipe(box, out);
      if (xp) {
        if (h.part_of(xp) != h.part_of(p))
          raise(errc::invariant_violation, "hyperpipe leaves its own exits");
        break;
      }
      int r = sh.row_of(box), c = sh.col_of(box);
      int nr = r + (out == dir::north ? 1 : 0), nc = c + (out == dir::east ? 1 : 0);
      if (!sh.in_shape(nr, nc))
        raise(errc::invariant_violation, "hyperpipe runs off the shape");
      box = sh.idx(nr, nc);
      d = out;
    }
  }
  hyper_contact g;
  g.parts = (int)h.parts.size();
  for (auto e : h.elbows) {
    int wn = strand_a[e], se = strand_b[e];
    if (!wn || !se) raise(errc::invariant_violation, "surviving elbow not doubly used");
    g.arcs.emplace_back(h.part_of(se) + 1, h.part_of(wn) + 1);
  }
  std::sort(g.arcs.begin(), g.arcs.end());
  g.closure = poset::try_closure_of(g.parts, g.arcs);
  g.acyclic = (g.closure.n == g.parts);
  return g;
}

// Merge the pipes of each part of a twist; parts must be connected in its
// contact graph.
inline hyper_twist make_hyper(const twist& t, std::vector<std::vector<int>> parts) {
  trace_data td = trace(t);
  hyper_twist h;
  h.sh = t.shape_ptr();
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end());
  h.parts = std::move(parts);
  {
    std::vector<int> seen(t.n() + 1, 0);
    for (auto& p : h.parts)
      for (int v : p)
        if (v < 1 || v > t.n() || seen[v]++) raise(errc::invariant_violation, "bad part family");
    for (int v = 1; v <= t.n(); ++v)
      if (!seen[v]) raise(errc::invariant_violation, "parts do not cover the pipes");
  }
  for (const auto& p : h.parts) {
    if (p.size() == 1) continue;
    std::set<int> in(p.begin(), p.end()), vis{p[0]};
    std::vector<int> stack{p[0]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& a : td.arcs) {
        int u = a.se == v ? a.wn : a.wn == v ? a.se : 0;
        if (u && in.count(u) && !vis.count(u)) {
          vis.insert(u);
          stack.push_back(u);
        }
      }
    }
    if (vis.size() != p.size())
      raise(errc::invariant_violation, "part not connected in the contact graph");
  }
  for (const auto& a : td.arcs)
    if (h.part_of(a.se) != h.part_of(a.wn)) h.elbows.push_back((uint16_t)a.box);
  std::sort(h.elbows.begin(), h.elbows.end());
  h.elbows.erase(std::unique(h.elbows.begin(), h.elbows.end()), h.elbows.end());
  return h;
}

// Insertion of an ordered partition: insert the blocks from right to left,
// merging the freshly connected pieces of each block.
inline hyper_twist insert_ordered_partition(int k, const ordered_partition& lam) {
  labeled_twist lt = labeled_twist::empty(k);
  std::vector<std::vector<int>> parts;
  for (int bi = lam.parts() - 1; bi >= 0; --bi) {
    const auto& blk = lam.blocks[bi];
    for (int v : blk) lt = pipe_insert(lt, v);
    trace_data td = trace(lt.t);
    std::map<int, int> label_pos;  // value -> index within blk
    for (int i = 0; i < (int)blk.size(); ++i) label_pos[blk[i]] = i;
    std::vector<std::set<int>> adj(blk.size());
    for (const auto& a : td.arcs) {
      int ls = lt.labels[a.se - 1], lw = lt.labels[a.wn - 1];
      if (label_pos.count(ls) && label_pos.count(lw)) {
        adj[label_pos[ls]].insert(label_pos[lw]);
        adj[label_pos[lw]].insert(label_pos[ls]);
      }
    }
    std::vector<int> comp(blk.size(), -1);
    int pieces = 0;
    for (int i = 0; i < (int)blk.size(); ++i) {
      if (comp[i] >= 0) continue;
      std::function<void(int)> dfs = [&](int v) {
        comp[v] = pieces;
        for (int u : adj[v])
          if (comp[u] < 0) dfs(u);
      };
      dfs(i);
      ++pieces;
    }
    for (int c = 0; c < pieces; ++c) {
      std::vector<int> part;
      for (int i = 0; i < (int)blk.size(); ++i)
        if (comp[i] == c) part.push_back(blk[i]);
      parts.push_back(std::move(part));
    }
  }
  return make_hyper(lt.t, std::move(parts));
}

// Hypertwist congruence rewriting on ordered partitions: merge or separate an
// adjacent comparable pair of blocks witnessed by k later values in between.
inline std::vector<ordered_partition> hyper_rewrite_neighbors(int k, const ordered_partition& p) {
  std::vector<ordered_partition> out;
  auto witnesses_after = [&](int first_block, int lo, int hi) {
    int w = 0;
    for (int b = first_block; b < p.parts(); ++b)
      for (int v : p.blocks[b])
        if (lo < v && v < hi) ++w;
    return w;
  };
  for (int i = 0; i + 1 < p.parts(); ++i) {
    const auto &x = p.blocks[i], &y = p.blocks[i + 1];
    bool inc = block_ll(x, y), dec = block_ll(y, x);
    if (!inc && !dec) continue;
    int a = inc ? x.back() : y.back();
    int c = inc ? y.front() : x.front();
    if (witnesses_after(i + 2, a, c) < k) continue;
    {
      std::vector<std::vector<int>> b = p.blocks;
      b[i].insert(b[i].end(), b[i + 1].begin(), b[i + 1].end());
      std::sort(b[i].begin(), b[i].end());
      b.erase(b.begin() + i + 1);
      out.emplace_back(std::move(b));
    }
    {
      std::vector<std::vector<int>> b = p.blocks;
      std::swap(b[i], b[i + 1]);
      out.emplace_back(std::move(b));
    }
  }
  for (int i = 0; i < p.parts(); ++i) {
    const auto& blk = p.blocks[i];
    for (size_t cut = 1; cut < blk.size(); ++cut) {
      std::vector<int> lo(blk.begin(), blk.begin() + cut), hi(blk.begin() + cut, blk.end());
      if (witnesses_after(i + 1, lo.back(), hi.front()) < k) continue;
      for (bool lo_first : {true, false}) {
        std::vector<std::vector<int>> b = p.blocks;
        b[i] = lo_first ? lo : hi;
        b.insert(b.begin() + i + 1, lo_first ? hi : lo);
        out.emplace_back(std::move(b));
      }
    }
  }
  return out;
}

inline std::vector<std::vector<ordered_partition>> hyper_congruence_classes(
    int k, int n, budget bud = budget()) {
  auto all = all_ordered_partitions(n, bud);
  std::map<ordered_partition, int> cls;
  std::vector<std::vector<ordered_partition>> classes;
  for (const auto& seed : all) {
    if (cls.count(seed)) continue;
    int id = (int)classes.size();
    classes.push_back({});
    std::vector<ordered_partition> queue{seed};
    cls[seed] = id;
    while (!queue.empty()) {
      ordered_partition p = queue.back();
      queue.pop_back();
      classes[id].push_back(p);
      for (auto& q : hyper_rewrite_neighbors(k, p))
        if (!cls.count(q)) {
          cls[q] = id;
          queue.push_back(q);
        }
    }
    std::sort(classes[id].begin(), classes[id].end());
  }
  return classes;
}

// The insertion fiber of an acyclic hypertwist, through the congruence class
// of a representative ordered partition.
inline std::vector<ordered_partition> hyper_fiber(const hyper_twist& h) {
  hyper_contact g = hyper_contact_of(h);
  if (!g.acyclic) raise(errc::cyclic_twist, "fiber of a cyclic hypertwist");
  auto exts = linear_extensions(g.closure);
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < exts[0].size(); ++i) blocks.push_back(h.parts[exts[0].at(i) - 1]);
  ordered_partition rep(std::move(blocks));
  std::set<ordered_partition> seen{rep};
  std::vector<ordered_partition> queue{rep};
  while (!queue.empty()) {
    ordered_partition p = queue.back();
    queue.pop_back();
    for (auto& q : hyper_rewrite_neighbors(h.k(), p))
      if (seen.insert(q).second) queue.push_back(q);
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Enumeration and the Schroder lattice.

inline std::vector<std::vector<std::vector<int>>> connected_partitions(const twist& t,
                                                                       const trace_data& td) {
  int n = t.n();
  std::vector<std::set<int>> adj(n + 1);
  for (const auto& a : td.arcs) {
    adj[a.se].insert(a.wn);
    adj[a.wn].insert(a.se);
  }
  auto connected = [&](const std::vector<int>& p) {
    if (p.size() == 1) return true;
    std::set<int> in(p.begin(), p.end()), vis{p[0]};
    std::vector<int> stack{p[0]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adj[v])
        if (in.count(u) && !vis.count(u)) {
          vis.insert(u);
          stack.push_back(u);
        }
    }
    return vis.size() == p.size();
  };
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int v) {
    if (v > n) {
      for (const auto& b : blocks)
        if (!connected(b)) return;
      out.push_back(blocks);
      return;
    }
    for (size_t i = 0; i < blocks.size(); ++i) {
      blocks[i].push_back(v);
      rec(v + 1);
      blocks[i].pop_back();
    }
    blocks.push_back({v});
    rec(v + 1);
    blocks.pop_back();
  };
  rec(1);
  return out;
}

inline std::vector<hyper_twist> enumerate_hypertwists(int k, int n, bool acyclic_only,
                                                      budget bud = budget()) {
  std::set<hyper_twist> seen;
  for (const auto& t : enumerate_twists(k, n, false, bud)) {
    trace_data td = trace(t);
    for (const auto& parts : connected_partitions(t, td)) {
      bud.charge();
      hyper_twist h = make_hyper(t, parts);
      if (acyclic_only && !hyper_contact_of(h).acyclic) continue;
      seen.insert(h);
    }
  }
  return {seen.begin(), seen.end()};
}

// Merge two parts joined by an arc; the merged picture drops their shared
// surviving elbows.
inline hyper_twist merge_parts(const hyper_twist& h, int pu, int pv) {
  const shape& sh = *h.sh;
  // recompute strands to find the elbows between the two parts
  hyper_contact g = hyper_contact_of(h);
  (void)g;
  std::vector<uint8_t> tiles(sh.cells(), 0);
  for (int id = 0; id < sh.cells(); ++id)
    if (sh.in_shape(sh.row_of(id), sh.col_of(id)) && sh.forced_elbow(id)) tiles[id] = 1;
  for (auto e : h.elbows) tiles[e] = 1;
  std::vector<int> strand_a(sh.cells(), 0), strand_b(sh.cells(), 0);
  for (int p = 1; p <= sh.n; ++p) {
    auto [box, d] = sh.entry(p);
    while (true) {
      ((d == dir::east) ? strand_a : strand_b)[box] = p;
      dir out = tiles[box] ? (d == dir::east ? dir::north : dir::east) : d;
      if (sh.exit_pipe(box, out)) break;
      int r = sh.row_of(box), c = sh.col_of(box);
      box = sh.idx(r + (out == dir::north ? 1 : 0), c + (out == dir::east ? 1 : 0));
      d = out;
    }
  }
  hyper_twist m;
  m.sh = h.sh;
  m.parts = h.parts;
  std::vector<int> merged = m.parts[pu];
  merged.insert(merged.end(), m.parts[pv].begin(), m.parts[pv].end());
  std::sort(merged.begin(), merged.end());
  m.parts.erase(m.parts.begin() + std::max(pu, pv));
  m.parts.erase(m.parts.begin() + std::min(pu, pv));
  m.parts.push_back(std::move(merged));
  std::sort(m.parts.begin(), m.parts.end());
  for (auto e : h.elbows) {
    int a = h.part_of(strand_b[e]), b = h.part_of(strand_a[e]);
    bool internal = (a == pu && b == pv) || (a == pv && b == pu);
    if (!internal) m.elbows.push_back(e);
  }
  std::sort(m.elbows.begin(), m.elbows.end());
  return m;
}

struct schroder_lattice_t {
  std::vector<hyper_twist> elems;
  finite_lattice order;
  int index_of(const hyper_twist& h) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), h);
    return it != elems.end() && *it == h ? int(it - elems.begin()) : -1;
  }
};

inline schroder_lattice_t schroder_lattice(int k, int n, budget bud = budget()) {
  schroder_lattice_t L;
  L.elems = enumerate_hypertwists(k, n, true, bud);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < (int)L.elems.size(); ++i) {
    const hyper_twist& h = L.elems[i];
    hyper_contact g = hyper_contact_of(h);
    std::set<std::pair<int, int>> arcs(g.arcs.begin(), g.arcs.end());
    for (auto [u, v] : arcs) {
      const auto &bu = h.parts[u - 1], &bv = h.parts[v - 1];
      bool inc = block_ll(bu, bv), dec = block_ll(bv, bu);
      if (!inc && !dec) continue;
      hyper_twist m = merge_parts(h, u - 1, v - 1);
      if (!hyper_contact_of(m).acyclic) continue;
      int j = L.index_of(m);
      if (j < 0) raise(errc::invariant_violation, "merge left the enumeration");
      if (inc) edges.emplace_back(i, j);
      else edges.emplace_back(j, i);
    }
  }
  L.order = finite_lattice::from_edges((int)L.elems.size(), edges);
  return L;
}

// ---------------------------------------------------------------------------
// Face projections.

inline orientation partition_recoils(int k, const ordered_partition& p) {
  orientation o(k, p.size());
  for (int i = 1; i <= p.size(); ++i)
    for (int j = i + 1; j <= std::min(p.size(), i + k); ++j) o.set(i, j, (int8_t)-p.coinv(i, j));
  return o;
}

inline orientation hyper_recoils(const hyper_twist& h) {
  hyper_contact g = hyper_contact_of(h);
  if (!g.acyclic) raise(errc::cyclic_twist, "recoils of a cyclic hypertwist");
  orientation o(h.k(), h.n());
  for (int i = 1; i <= h.n(); ++i)
    for (int j = i + 1; j <= std::min(h.n(), i + h.k()); ++j) {
      int pi = h.part_of(i) + 1, pj = h.part_of(j) + 1;
      if (pi == pj) continue;
      if (g.closure.less(pi, pj)) o.set(i, j, +1);
      else if (g.closure.less(pj, pi)) o.set(i, j, -1);
    }
  return o;
}

// ---------------------------------------------------------------------------
// The Hopf algebra on ordered partitions and its hypertwist subalgebra.

inline ordered_partition std_blocks(const std::vector<std::vector<int>>& blocks) {
  std::vector<int> values;
  for (auto& b : blocks) values.insert(values.end(), b.begin(), b.end());
  std::sort(values.begin(), values.end());
  std::vector<std::vector<int>> out;
  for (auto& b : blocks) {
    std::vector<int> nb;
    for (int v : b)
      nb.push_back(int(std::lower_bound(values.begin(), values.end(), v) - values.begin()) + 1);
    out.push_back(std::move(nb));
  }
  return ordered_partition(std::move(out));
}

// Shifted shuffle: interleave the block sequences, optionally fusing one block
// of each operand into a common part.
inline formal_sum<ordered_partition> hyper_shuffle(const ordered_partition& a,
                                                   const ordered_partition& b) {
  int n = a.size();
  formal_sum<ordered_partition> out;
  std::vector<std::vector<int>> acc;
  std::function<void(int, int)> rec = [&](int i, int j) {
    if (i == a.parts() && j == b.parts()) {
      out.add(ordered_partition(acc), 1);
      return;
    }
    if (i < a.parts()) {
      acc.push_back(a.blocks[i]);
      rec(i + 1, j);
      acc.pop_back();
    }
    if (j < b.parts()) {
      std::vector<int> shifted;
      for (int v : b.blocks[j]) shifted.push_back(v + n);
      acc.push_back(shifted);
      rec(i, j + 1);
      acc.pop_back();
    }
    if (i < a.parts() && j < b.parts()) {
      std::vector<int> fused = a.blocks[i];
      for (int v : b.blocks[j]) fused.push_back(v + n);
      acc.push_back(fused);
      rec(i + 1, j + 1);
      acc.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

// Convolution: all ways to allot values to the concatenated block sequence.
inline formal_sum<ordered_partition> hyper_convolution_terms(const ordered_partition& a,
                                                             const ordered_partition& b) {
  int n = a.size(), m = b.size();
  formal_sum<ordered_partition> out;
  std::vector<int> X;
  std::function<void(int)> rec = [&](int next) {
    if ((int)X.size() == n) {
      std::vector<int> rest;
      std::vector<bool> used(n + m + 1, false);
      for (int v : X) used[v] = true;
      for (int v = 1; v <= n + m; ++v)
        if (!used[v]) rest.push_back(v);
      std::vector<std::vector<int>> blocks;
      for (const auto& blk : a.blocks) {
        std::vector<int> nb;
        for (int v : blk) nb.push_back(X[v - 1]);
        blocks.push_back(std::move(nb));
      }
      for (const auto& blk : b.blocks) {
        std::vector<int> nb;
        for (int v : blk) nb.push_back(rest[v - 1]);
        blocks.push_back(std::move(nb));
      }
      out.add(ordered_partition(std::move(blocks)), 1);
      return;
    }
    for (int v = next; v <= n + m; ++v) {
      X.push_back(v);
      rec(v + 1);
      X.pop_back();
    }
  };
  rec(1);
  return out;
}

inline formal_sum<ordered_partition> hyper_product(const formal_sum<ordered_partition>& a,
                                                   const formal_sum<ordered_partition>& b) {
  return bilinear(a, b, hyper_shuffle);
}

inline tensor_sum<ordered_partition> hyper_coproduct_basis(const ordered_partition& mu) {
  tensor_sum<ordered_partition> out;
  for (int p = 0; p <= mu.parts(); ++p) {
    std::vector<std::vector<int>> lo(mu.blocks.begin(), mu.blocks.begin() + p);
    std::vector<std::vector<int>> hi(mu.blocks.begin() + p, mu.blocks.end());
    out.add({std_blocks(lo), std_blocks(hi)}, 1);
  }
  return out;
}

inline formal_sum<ordered_partition> hyperP_expand(const hyper_twist& h) {
  formal_sum<ordered_partition> out;
  for (const auto& p : hyper_fiber(h)) out.add(p, 1);
  return out;
}

}  // namespace twistlab
