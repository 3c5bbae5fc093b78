#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "twistlab/congruence.hpp"
#include "twistlab/geometry.hpp"
#include "twistlab/insertion.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/orientation.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

// Pipe router: fills a shape with the given pipes inserted one at a time,
// each as northwest as possible among the fillings that complete to a valid
// twist.  Backtracking search with north-first choice order; a per-pipe
// reachability bound (own exit, single crossings, exact bend profile) prunes
// the walk.
class pipe_router {
 public:
  explicit pipe_router(std::shared_ptr<const shape> sh) : sh_(std::move(sh)) {
    int cells = sh_->cells();
    tile_.assign(cells, -1);
    slot_a_.assign(cells, 0);
    slot_b_.assign(cells, 0);
    for (int id = 0; id < cells; ++id)
      if (sh_->in_shape(sh_->row_of(id), sh_->col_of(id)) && sh_->forced_elbow(id)) tile_[id] = 1;
  }

  // Route all pipes in the given insertion order.
  void route_all(const std::vector<int>& order) {
    order_ = order;
    if (!route_from(0)) raise(errc::invariant_violation, "pipe routing is stuck");
  }

  twist finish() const {
    std::vector<uint16_t> elbows;
    for (int id = 0; id < sh_->cells(); ++id) {
      if (!sh_->in_shape(sh_->row_of(id), sh_->col_of(id))) continue;
      if (tile_[id] < 0) raise(errc::invariant_violation, "unfilled box after routing");
      if (tile_[id] == 1 && !sh_->forced_elbow(id)) elbows.push_back((uint16_t)id);
    }
    return twist(sh_, std::move(elbows));
  }

 private:
  struct step {
    bool as_elbow = false;
    dir out = dir::east;
    int crossing = 0;   // pipe crossed inside this box, 0 if none
    bool exits = false;
    int exit_pipe = 0;
    int next_box = -1;
  };

  struct budget_state {
    mask_t crossed = 0;
    int se = 0, wn = 0;
  };

  // Candidate moves through a box for the pipe being routed, northwest first.
  std::vector<step> options(int box, dir d) const {
    std::vector<step> out;
    auto make = [&](bool elbow) {
      if (tile_[box] >= 0 && (tile_[box] == 1) != elbow) return;
      if ((d == dir::east ? slot_a_ : slot_b_)[box]) return;  // channel taken
      step s;
      s.as_elbow = elbow;
      s.out = elbow ? (d == dir::east ? dir::north : dir::east) : d;
      if (!elbow) s.crossing = (d == dir::east ? slot_b_ : slot_a_)[box];
      int xp = sh_->exit_pipe(box, s.out);
      if (xp) {
        s.exits = true;
        s.exit_pipe = xp;
      } else {
        int r = sh_->row_of(box), c = sh_->col_of(box);
        int nr = r + (s.out == dir::north ? 1 : 0), nc = c + (s.out == dir::east ? 1 : 0);
        if (!sh_->in_shape(nr, nc)) return;
        s.next_box = sh_->idx(nr, nc);
      }
      out.push_back(s);
    };
    if (d == dir::east) {
      make(true);   // turn north
      make(false);  // keep east
    } else {
      make(false);  // keep north
      make(true);   // turn east
    }
    return out;
  }

  bool advance(const step& s, dir d, const budget_state& b, budget_state& nb) const {
    if (s.crossing && ((b.crossed >> (s.crossing - 1)) & 1)) return false;
    nb = b;
    if (s.as_elbow) (d == dir::north ? nb.se : nb.wn)--;
    if (nb.se < 0 || nb.wn < 0) return false;
    if (s.crossing) nb.crossed |= bit(s.crossing - 1);
    return true;
  }

  using memo_t = std::map<std::tuple<int, bool, mask_t, int, int>, bool>;

  // Necessary condition: the pipe alone can still reach its own exit.
  bool reachable(int pipe, int box, dir d, const budget_state& b, memo_t& memo) const {
    auto key = std::make_tuple(box, d == dir::north, b.crossed, b.se, b.wn);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (const step& s : options(box, d)) {
      budget_state nb;
      if (!advance(s, d, b, nb)) continue;
      if (s.exits) {
        if (s.exit_pipe == pipe && !nb.se && !nb.wn) { ok = true; break; }
        continue;
      }
      if (reachable(pipe, s.next_box, s.out, nb, memo)) { ok = true; break; }
    }
    memo.emplace(key, ok);
    return ok;
  }

  bool route_from(size_t i) {
    if (i == order_.size()) return true;
    int p = order_[i];
    budget_state b;
    b.se = sh_->sig[p - 1] < 0 ? sh_->k : sh_->k + 1;
    b.wn = sh_->sig[p - 1] < 0 ? sh_->k + 1 : sh_->k;
    memo_t memo;
    auto [box, d] = sh_->entry(p);
    return walk(i, p, box, d, b, memo);
  }

  bool walk(size_t i, int p, int box, dir d, const budget_state& b, memo_t& memo) {
    for (const step& s : options(box, d)) {
      budget_state nb;
      if (!advance(s, d, b, nb)) continue;
      if (s.exits) {
        if (s.exit_pipe != p || nb.se || nb.wn) continue;
        apply(p, box, d, s);
        if (route_from(i + 1)) return true;
        undo(box, d);
        continue;
      }
      if (!reachable(p, s.next_box, s.out, nb, memo)) continue;
      apply(p, box, d, s);
      if (walk(i, p, s.next_box, s.out, nb, memo)) return true;
      undo(box, d);
    }
    return false;
  }

  void apply(int p, int box, dir d, const step& s) {
    if (tile_[box] < 0) {
      tile_[box] = s.as_elbow ? 1 : 0;
      fresh_.push_back(box);
    } else {
      fresh_.push_back(-1);
    }
    (d == dir::east ? slot_a_ : slot_b_)[box] = p;
  }

  void undo(int box, dir d) {
    (d == dir::east ? slot_a_ : slot_b_)[box] = 0;
    int mark = fresh_.back();
    fresh_.pop_back();
    if (mark >= 0) tile_[mark] = -1;
  }

  std::shared_ptr<const shape> sh_;
  std::vector<int8_t> tile_;
  std::vector<int> slot_a_, slot_b_;
  std::vector<int> order_;
  std::vector<int> fresh_;
};

// The insertion surjection on signed permutations: route the entries from
// right to left, each as northwest as possible.
inline twist cambrian_insert(int k, const signed_perm& t) {
  if (t.layers() != 1) raise(errc::size_mismatch, "cambrian insertion needs one sign layer");
  pipe_router router(shape::make(k, t.signs[0]));
  std::vector<int> order;
  for (int i = t.size() - 1; i >= 0; --i) order.push_back(t.p.at(i));
  router.route_all(order);
  twist result = router.finish();
  trace(result);
  return result;
}

inline std::vector<signed_perm> signed_class(const signature& sig) {
  std::vector<signed_perm> out;
  for (const auto& t : all_perms((int)sig.size())) out.emplace_back(t, std::vector<signature>{sig});
  return out;
}

// One rewriting step of the Cambrian congruence: exchange adjacent a < c when
// some value window [a', c'] inside (a, c) carries k more positive letters
// before the pair than negative letters after it, or vice versa.
inline bool cambrian_swap_allowed(int k, const signature& sig, const perm& t, int pos) {
  int a = std::min(t.at(pos), t.at(pos + 1)), c = std::max(t.at(pos), t.at(pos + 1));
  for (int lo = a + 1; lo < c; ++lo)
    for (int hi = lo; hi < c; ++hi) {
      int pos_before = 0, neg_after = 0;
      for (int v = lo; v <= hi; ++v) {
        if (t.pos_of(v) < pos && sig[v - 1] > 0) ++pos_before;
        if (t.pos_of(v) > pos + 1 && sig[v - 1] < 0) ++neg_after;
      }
      if (pos_before - neg_after >= k || neg_after - pos_before >= k) return true;
    }
  return false;
}

inline std::vector<perm> cambrian_rewrite_neighbors(int k, const signature& sig, const perm& t) {
  std::vector<perm> out;
  for (int i = 0; i + 1 < t.size(); ++i)
    if (cambrian_swap_allowed(k, sig, t, i)) out.push_back(t.swapped(i));
  return out;
}

inline std::vector<std::vector<perm>> cambrian_congruence_classes(int k, const signature& sig) {
  return rewrite_classes((int)sig.size(),
                         [&](const perm& t) { return cambrian_rewrite_neighbors(k, sig, t); });
}

inline std::vector<twist> enumerate_cambrian_twists(int k, const signature& sig, bool acyclic_only,
                                                    budget bud = budget()) {
  signed_perm seed(perm::identity((int)sig.size()), {sig});
  return enumerate_twists_of(cambrian_insert(k, seed), acyclic_only, bud);
}

inline std::set<twist> cambrian_fibers_image(int k, const signature& sig) {
  std::set<twist> img;
  for (const auto& s : signed_class(sig)) img.insert(cambrian_insert(k, s));
  return img;
}

// Increasing flip lattice on acyclic Cambrian twists.  Only flips joining
// classes with weak-order adjacent representatives are covers of the quotient;
// other increasing flips exist (between weak-order incomparable classes) and
// must not enter the order.
inline twist_lattice cambrian_flip_lattice(int k, const signature& sig, budget bud = budget()) {
  twist_lattice L;
  L.elems = enumerate_cambrian_twists(k, sig, true, bud);
  auto adjacent_classes = [&](const twist& a, const twist& b) {
    for (const auto& x : fiber(a))
      for (int i = 0; i + 1 < x.size(); ++i)
        if (x.at(i) < x.at(i + 1)) {
          perm y = x.swapped(i);
          contact_graph g = contact_graph::of(b);
          if (g.closure.is_linear_extension(y)) return true;
        }
    return false;
  };
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < (int)L.elems.size(); ++i)
    for (auto& mv : flip_neighbors(L.elems[i])) {
      if (!mv.increasing) continue;
      auto it = std::lower_bound(L.elems.begin(), L.elems.end(), mv.result);
      if (it == L.elems.end() || !(*it == mv.result)) continue;
      if (adjacent_classes(L.elems[i], mv.result))
        edges.emplace_back(i, int(it - L.elems.begin()));
    }
  L.order = finite_lattice::from_edges((int)L.elems.size(), edges);
  return L;
}

// Brick vector on a Cambrian shape: the origin is placed midway between the
// brick vectors of the minimal and maximal twists.
inline vertex_coords cambrian_brick_vector(const twist& t) {
  const shape& sh = t.sh();
  int n = sh.n;
  auto mid = [&](const signature& sig) {
    signed_perm lo(perm::identity(n), {sig});
    std::vector<int> rev(n);
    for (int i = 0; i < n; ++i) rev[i] = n - i;
    signed_perm hi(perm(rev), {sig});
    auto a = brick_areas(cambrian_insert(sh.k, lo), trace(cambrian_insert(sh.k, lo)));
    auto b = brick_areas(cambrian_insert(sh.k, hi), trace(cambrian_insert(sh.k, hi)));
    vertex_coords m(n);
    for (int i = 0; i < n; ++i) m[i] = rat(a[i] + b[i], 2);
    return m;
  };
  vertex_coords center = mid(sh.sig);
  auto areas = brick_areas(t, trace(t));
  vertex_coords x(n);
  for (int i = 0; i < n; ++i) x[i] = rat(areas[i]) - center[i];
  return x;
}

// ---------------------------------------------------------------------------
// Twist tuples and twins.

struct twist_tuple {
  std::vector<twist> parts;
  bool acyclic = false;
  poset union_closure;  // valid when acyclic

  friend bool operator==(const twist_tuple& a, const twist_tuple& b) {
    return a.parts == b.parts;
  }
  friend bool operator<(const twist_tuple& a, const twist_tuple& b) { return a.parts < b.parts; }
};

inline twist_tuple make_tuple_of(std::vector<twist> parts) {
  twist_tuple tp;
  tp.parts = std::move(parts);
  int n = tp.parts.empty() ? 0 : tp.parts[0].n();
  std::vector<std::pair<int, int>> arcs;
  for (const auto& t : tp.parts)
    for (auto [se, wn] : contact_graph::of(t).arcs) arcs.emplace_back(se, wn);
  poset p = poset::try_closure_of(n, arcs);
  tp.acyclic = (p.n == n);
  if (tp.acyclic) tp.union_closure = p;
  return tp;
}

inline twist_tuple tuple_insert(int k, const signed_perm& t) {
  std::vector<twist> parts;
  for (int r = 0; r < t.layers(); ++r) parts.push_back(cambrian_insert(k, t.layer(r)));
  return make_tuple_of(std::move(parts));
}

inline std::vector<perm> tuple_fiber(const twist_tuple& tp) {
  if (!tp.acyclic) raise(errc::cyclic_twist, "fiber of a cyclic tuple");
  return linear_extensions(tp.union_closure);
}

// Flip of an arc p -> q of the union contact graph: flip, in every member
// holding the arc, the elbow between p and q farthest from their crossing.
// The arc is flippable when no member holds it reversed.
inline std::vector<std::pair<std::pair<int, int>, twist_tuple>> tuple_flips(
    const twist_tuple& tp) {
  std::vector<std::pair<std::pair<int, int>, twist_tuple>> out;
  if (!tp.acyclic) raise(errc::cyclic_twist, "flips of a cyclic tuple");
  std::set<std::pair<int, int>> arcs;
  for (const auto& t : tp.parts)
    for (auto [se, wn] : contact_graph::of(t).arcs) arcs.insert({se, wn});
  for (auto [p, q] : arcs) {
    if (arcs.count({q, p})) continue;  // some member holds the reverse arc
    std::vector<twist> flipped;
    bool ok = true;
    for (const auto& t : tp.parts) {
      trace_data td = trace(t);
      const shape& sh = t.sh();
      int cross_box = td.cross_at(p, q, sh.n);
      int pick = -1;
      long long best = -1;
      for (const auto& a : td.arcs)
        if (a.se == p && a.wn == q) {
          long long dr = sh.row_of(a.box) - sh.row_of(cross_box);
          long long dc = sh.col_of(a.box) - sh.col_of(cross_box);
          long long dist = dr * dr + dc * dc;
          if (dist > best) {
            best = dist;
            pick = a.box;
          }
        }
      if (pick < 0) {
        // p and q must be incomparable here for the flip to apply
        contact_graph g = contact_graph::of(t, td);
        if (g.closure.less(p, q) || g.closure.less(q, p)) {
          ok = false;
          break;
        }
        flipped.push_back(t);
      } else {
        flipped.push_back(flip_with(t, td, pick));
      }
    }
    if (!ok) continue;
    twist_tuple next = make_tuple_of(std::move(flipped));
    out.push_back({{p, q}, std::move(next)});
  }
  return out;
}

// Pairs [T in AT(sig), T' in AT(-sig)] whose contact graph union is acyclic.
inline long long twin_pairs(int k, int n, bool alternating) {
  signature sig = alternating ? alternating_signature(n, false) : minus_signature(n);
  auto A = cambrian_fibers_image(k, sig);
  auto B = cambrian_fibers_image(k, negate(sig));
  long long count = 0;
  for (const auto& a : A)
    for (const auto& b : B)
      if (make_tuple_of({a, b}).acyclic) ++count;
  return count;
}

}  // namespace twistlab
