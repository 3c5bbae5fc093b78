#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "twistlab/core.hpp"
#include "twistlab/perm.hpp"

namespace twistlab {

using signature = std::vector<int8_t>;  // +1 / -1 per pipe

inline signature minus_signature(int n) { return signature(n, -1); }
inline signature plus_signature(int n) { return signature(n, +1); }
inline signature negate(const signature& s) {
  signature t = s;
  for (auto& x : t) x = -x;
  return t;
}
inline signature alternating_signature(int n, bool plus_first) {
  signature s(n);
  for (int i = 0; i < n; ++i) s[i] = ((i % 2 == 0) == plus_first) ? +1 : -1;
  return s;
}
inline std::string sig_str(const signature& s) {
  std::string out;
  for (auto x : s) out += x > 0 ? '+' : '-';
  return out;
}
inline signature parse_signature(const std::string& s) {
  signature out;
  for (char c : s) {
    if (c == '+') out.push_back(+1);
    else if (c == '-') out.push_back(-1);
    else raise(errc::parse_error, "signature characters must be + or -");
  }
  return out;
}

enum class dir : uint8_t { east, north };  // direction of travel

// Staircase shape in which a (k,sig)-twist lives.  Boxes are unit cells (r,c),
// the cell [c-1,c] x [r-1,r], rows bottom-to-top and columns left-to-right.
// The classical (k,n) shape is the all-minus signature.
class shape {
 public:
  int k = 0;
  int n = 0;
  signature sig;
  int grid = 0;  // rows and columns range over 1..grid, grid = n+k

  struct port {
    int box = -1;  // box id
    dir d = dir::east;
  };

  bool in_shape(int r, int c) const {
    return r >= 1 && c >= 1 && r <= grid && c <= grid && member_[idx(r, c)];
  }
  int idx(int r, int c) const { return (r - 1) * grid + (c - 1); }
  int row_of(int id) const { return id / grid + 1; }
  int col_of(int id) const { return id % grid + 1; }
  int cells() const { return grid * grid; }

  bool forced_elbow(int id) const { return forced_[id]; }
  bool interior(int id) const { return member_[id] && !forced_[id]; }
  int box_count() const { return box_count_; }
  int interior_count() const { return interior_count_; }

  const port& entry(int p) const { return entries_[p - 1]; }  // pipe p in [n]
  const port& exit(int p) const { return exits_[p - 1]; }

  // Pipe exiting through the given edge of a box, or 0.
  int exit_pipe(int id, dir d) const { return d == dir::north ? exit_north_[id] : exit_east_[id]; }
  int entry_pipe(int id, dir d) const { return d == dir::east ? entry_west_[id] : entry_south_[id]; }

  bool classical() const {
    return std::all_of(sig.begin(), sig.end(), [](int8_t s) { return s < 0; });
  }

  static std::shared_ptr<const shape> make(int k, const signature& sig);
  static std::shared_ptr<const shape> classical_shape(int k, int n) {
    return make(k, minus_signature(n));
  }

 private:
  std::vector<uint8_t> member_;
  std::vector<uint8_t> forced_;
  std::vector<port> entries_, exits_;
  std::vector<int> exit_north_, exit_east_, entry_west_, entry_south_;
  int box_count_ = 0;
  int interior_count_ = 0;

  friend shape build_shape_impl(int k, const signature& sig);
};

inline shape build_shape_impl(int k, const signature& sig) {
  shape sh;
  sh.k = k;
  sh.n = static_cast<int>(sig.size());
  sh.sig = sig;
  sh.grid = sh.n + k;
  int n = sh.n;
  int pos = 0, neg = 0;
  for (auto s : sig) (s > 0 ? pos : neg)++;

  // Boundary polygon from the four lattice paths; only vertical segments
  // matter for the even-odd test.  A segment is (x, ylo, yhi).
  std::vector<std::array<int, 3>> vsegs;
  struct edge_port { int r, c; dir d; };
  std::vector<edge_port> entry_ports(n), exit_ports(n);

  {  // enter path: from (pos, 0), north on '-' and west on '+'
    int x = pos, y = 0;
    for (int p = 1; p <= n; ++p) {
      if (sig[p - 1] < 0) {
        vsegs.push_back({x, y, y + 1});
        entry_ports[p - 1] = {y + 1, x + 1, dir::east};
        ++y;
      } else {
        entry_ports[p - 1] = {y + 1, x, dir::north};
        --x;
      }
    }
  }
  {  // exit path: from (pos+k, n+k), east on '-' and south on '+'
    int x = pos + k, y = n + k;
    for (int p = 1; p <= n; ++p) {
      if (sig[p - 1] < 0) {
        exit_ports[p - 1] = {y, x + 1, dir::north};
        ++x;
      } else {
        vsegs.push_back({x, y - 1, y});
        exit_ports[p - 1] = {y, x, dir::east};
        --y;
      }
    }
  }
  {  // accordion (NE)^{pos+k} from (0, neg)
    int x = 0, y = neg;
    for (int i = 0; i < pos + k; ++i) {
      vsegs.push_back({x, y, y + 1});
      ++y;
      ++x;
    }
  }
  {  // accordion (EN)^{neg+k} from (pos, 0)
    int x = pos, y = 0;
    for (int i = 0; i < neg + k; ++i) {
      ++x;
      vsegs.push_back({x, y, y + 1});
      ++y;
    }
  }

  int G = sh.grid;
  sh.member_.assign(G * G, 0);
  for (int r = 1; r <= G; ++r)
    for (int c = 1; c <= G; ++c) {
      // cast a ray to the left from the cell center (c-1/2, r-1/2)
      int crossings = 0;
      for (const auto& s : vsegs)
        if (s[0] < c && s[1] <= r - 1 && r <= s[2]) ++crossings;
      if (crossings & 1) sh.member_[sh.idx(r, c)] = 1;
    }

  sh.entry_west_.assign(G * G, 0);
  sh.entry_south_.assign(G * G, 0);
  sh.exit_north_.assign(G * G, 0);
  sh.exit_east_.assign(G * G, 0);
  sh.entries_.resize(n);
  sh.exits_.resize(n);
  for (int p = 1; p <= n; ++p) {
    auto [er, ec, ed] = entry_ports[p - 1];
    if (!sh.in_shape(er, ec)) raise(errc::invariant_violation, "entry not on the shape");
    int eid = sh.idx(er, ec);
    sh.entries_[p - 1] = {eid, ed};
    (ed == dir::east ? sh.entry_west_ : sh.entry_south_)[eid] = p;
    auto [xr, xc, xd] = exit_ports[p - 1];
    if (!sh.in_shape(xr, xc)) raise(errc::invariant_violation, "exit not on the shape");
    int xid = sh.idx(xr, xc);
    sh.exits_[p - 1] = {xid, xd};
    (xd == dir::north ? sh.exit_north_ : sh.exit_east_)[xid] = p;
  }

  sh.forced_.assign(G * G, 0);
  for (int r = 1; r <= G; ++r)
    for (int c = 1; c <= G; ++c) {
      int id = sh.idx(r, c);
      if (!sh.member_[id]) continue;
      ++sh.box_count_;
      bool w = sh.in_shape(r, c - 1) || sh.entry_west_[id];
      bool s = sh.in_shape(r - 1, c) || sh.entry_south_[id];
      bool nn = sh.in_shape(r + 1, c) || sh.exit_north_[id];
      bool e = sh.in_shape(r, c + 1) || sh.exit_east_[id];
      if (n > 0 && !((w || s) && (nn || e)))
        raise(errc::invariant_violation, "untraversable box in shape");
      if (!(w && s && nn && e)) sh.forced_[id] = 1;
    }
  for (int id = 0; id < G * G; ++id)
    if (sh.member_[id] && !sh.forced_[id]) ++sh.interior_count_;
  return sh;
}

inline std::shared_ptr<const shape> shape::make(int k, const signature& sig) {
  static std::map<std::pair<int, std::string>, std::shared_ptr<const shape>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(k, sig_str(sig));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto sp = std::make_shared<shape>(build_shape_impl(k, sig));
  cache[key] = sp;
  return sp;
}

enum class tile : uint8_t { cross, elbow };

// A twist: a filling of its shape.  Only the interior elbows are stored; the
// forced boundary elbows are implied.  Equality and hashing use the interior
// elbow set alone.
class twist {
 public:
  twist() = default;
  twist(std::shared_ptr<const shape> sh, std::vector<uint16_t> interior_elbows)
      : shape_(std::move(sh)), elbows_(std::move(interior_elbows)) {
    std::sort(elbows_.begin(), elbows_.end());
  }

  const shape& sh() const { return *shape_; }
  std::shared_ptr<const shape> shape_ptr() const { return shape_; }
  int k() const { return shape_->k; }
  int n() const { return shape_->n; }
  const std::vector<uint16_t>& elbows() const { return elbows_; }

  tile tile_at(int id) const {
    if (shape_->forced_elbow(id)) return tile::elbow;
    return std::binary_search(elbows_.begin(), elbows_.end(), (uint16_t)id) ? tile::elbow
                                                                            : tile::cross;
  }

  friend bool operator==(const twist& a, const twist& b) {
    return a.k() == b.k() && a.sh().sig == b.sh().sig && a.elbows_ == b.elbows_;
  }
  friend bool operator!=(const twist& a, const twist& b) { return !(a == b); }
  friend bool operator<(const twist& a, const twist& b) {
    if (a.k() != b.k()) return a.k() < b.k();
    if (a.sh().sig != b.sh().sig) return a.sh().sig < b.sh().sig;
    return a.elbows_ < b.elbows_;
  }

  size_t hash() const {
    size_t h = 1469598103934665603ull ^ (size_t)k();
    for (auto e : elbows_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

  std::string str() const {
    std::string s = "T(k=" + std::to_string(k()) + ",sig=" + sig_str(sh().sig) + ";";
    for (size_t i = 0; i < elbows_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(sh().row_of(elbows_[i])) + "," + std::to_string(sh().col_of(elbows_[i]));
    }
    return s + ")";
  }

 private:
  std::shared_ptr<const shape> shape_;
  std::vector<uint16_t> elbows_;
};

struct twist_hash {
  size_t operator()(const twist& t) const { return t.hash(); }
};

struct path_step {
  int box;
  dir in;  // direction of travel when entering the box
};

// Full combinatorial data recovered by tracing all pipes of a twist.
struct trace_data {
  std::vector<uint8_t> tiles;                    // per grid cell
  std::vector<std::vector<path_step>> paths;     // per pipe, 1-based outside
  std::vector<int> strand_a, strand_b;           // per cell: WE/WN pipe, SN/SE pipe
  std::vector<int> crossing;                     // n*n: crossing box of pipes (p,q), -1
  struct arc { int box, se, wn; };
  std::vector<arc> arcs;                         // one per interior elbow

  int cross_at(int p, int q, int n) const { return crossing[(p - 1) * n + (q - 1)]; }
};

// Trace and validate.  Throws DoubleCrossing / BadEndpoint / InvariantViolation.
inline trace_data trace(const twist& t) {
  const shape& sh = t.sh();
  int n = sh.n, cells = sh.cells();
  trace_data td;
  td.tiles.assign(cells, 0);
  for (int id = 0; id < cells; ++id)
    if (sh.in_shape(sh.row_of(id), sh.col_of(id)))
      td.tiles[id] = t.tile_at(id) == tile::elbow ? 1 : 0;
  td.strand_a.assign(cells, 0);
  td.strand_b.assign(cells, 0);
  td.crossing.assign(n * n, -1);
  td.paths.assign(n, {});

  for (int p = 1; p <= n; ++p) {
    auto [box, d] = sh.entry(p);
    auto& path = td.paths[p - 1];
    while (true) {
      int r = sh.row_of(box), c = sh.col_of(box);
      path.push_back({box, d});
      bool elbow = td.tiles[box];
      // slot a: W->E strand of a cross or W->N arc of an elbow (entered eastbound);
      // slot b: S->N strand or S->E arc (entered northbound).
      int& slot = (d == dir::east) ? td.strand_a[box] : td.strand_b[box];
      if (slot) raise(errc::invariant_violation, "strand used twice at box " + std::to_string(box));
      slot = p;
      if (!elbow) {
        int other = (d == dir::east) ? td.strand_b[box] : td.strand_a[box];
        if (other) {
          int q = other;
          if (td.crossing[(p - 1) * n + (q - 1)] != -1)
            raise(errc::double_crossing, "pipes " + std::to_string(p) + " and " + std::to_string(q) +
                                             " cross twice");
          td.crossing[(p - 1) * n + (q - 1)] = box;
          td.crossing[(q - 1) * n + (p - 1)] = box;
        }
      }
      dir out = elbow ? (d == dir::east ? dir::north : dir::east) : d;
      if (sh.exit_pipe(box, out) == p) break;  // reached this pipe's exit
      if (sh.exit_pipe(box, out) != 0)
        raise(errc::bad_endpoint, "pipe " + std::to_string(p) + " leaves at a foreign exit");
      int nr = r + (out == dir::north ? 1 : 0), nc = c + (out == dir::east ? 1 : 0);
      if (!sh.in_shape(nr, nc))
        raise(errc::bad_endpoint, "pipe " + std::to_string(p) + " runs off the shape");
      box = sh.idx(nr, nc);
      d = out;
    }
  }

  for (int id = 0; id < cells; ++id) {
    if (!sh.in_shape(sh.row_of(id), sh.col_of(id))) continue;
    int a = td.strand_a[id], b = td.strand_b[id];
    if (sh.forced_elbow(id)) continue;  // boundary elbows carry at most one pipe
    if (!a || !b) raise(errc::invariant_violation, "interior box not fully used");
    if (td.tiles[id]) td.arcs.push_back({id, b, a});  // arc: SE-pipe -> WN-pipe
  }
  // Every pair must cross exactly once.
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q)
      if (td.crossing[(p - 1) * n + (q - 1)] < 0)
        raise(errc::invariant_violation, "pipes never cross");
  return td;
}

struct contact_graph {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;  // (se, wn), pipe labels in [n]
  bool acyclic = false;
  poset closure;  // valid only when acyclic

  static contact_graph of(const twist& t, const trace_data& td) {
    contact_graph g;
    g.n = t.n();
    for (const auto& a : td.arcs) g.arcs.emplace_back(a.se, a.wn);
    std::sort(g.arcs.begin(), g.arcs.end());
    g.closure = poset::try_closure_of(g.n, g.arcs);
    g.acyclic = (g.closure.n == g.n);
    return g;
  }
  static contact_graph of(const twist& t) { return of(t, trace(t)); }
};

inline bool is_acyclic(const twist& t) { return contact_graph::of(t).acyclic; }

// Validated construction from an interior elbow set (classical shape).
inline twist build_twist(int k, int n, const std::vector<std::pair<int, int>>& interior_elbows) {
  auto sh = shape::classical_shape(k, n);
  std::vector<uint16_t> ids;
  for (auto [r, c] : interior_elbows) {
    if (!sh->in_shape(r, c))
      raise(errc::out_of_shape, "box (" + std::to_string(r) + "," + std::to_string(c) + ")");
    int id = sh->idx(r, c);
    if (sh->forced_elbow(id))
      raise(errc::out_of_shape, "box (" + std::to_string(r) + "," + std::to_string(c) +
                                    ") is a boundary elbow, not interior");
    ids.push_back((uint16_t)id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    raise(errc::invariant_violation, "duplicate elbow box");
  twist t(sh, std::move(ids));
  trace(t);
  return t;
}

struct flip_move {
  int from_box;
  int to_box;
  bool increasing;
  twist result;
};

inline twist flip_with(const twist& t, const trace_data& td, int box, bool* increasing = nullptr) {
  const shape& sh = t.sh();
  if (!sh.in_shape(sh.row_of(box), sh.col_of(box)) || !td.tiles[box])
    raise(errc::not_an_elbow, "box " + std::to_string(box));
  if (sh.forced_elbow(box)) raise(errc::boundary_elbow, "box " + std::to_string(box));
  int wn = td.strand_a[box], se = td.strand_b[box];
  int cross = td.cross_at(se, wn, sh.n);
  std::vector<uint16_t> e = t.elbows();
  e.erase(std::find(e.begin(), e.end(), (uint16_t)box));
  e.push_back((uint16_t)cross);
  if (increasing) {
    int r0 = sh.row_of(box), c0 = sh.col_of(box), r1 = sh.row_of(cross), c1 = sh.col_of(cross);
    *increasing = (r0 <= r1 && c0 <= c1);
  }
  return twist(t.shape_ptr(), std::move(e));
}

inline twist flip(const twist& t, int row, int col) {
  const shape& sh = t.sh();
  if (row < 1 || col < 1 || row > sh.grid || col > sh.grid || !sh.in_shape(row, col))
    raise(errc::not_an_elbow, "box outside shape");
  return flip_with(t, trace(t), sh.idx(row, col));
}

inline std::vector<flip_move> flip_neighbors(const twist& t) {
  trace_data td = trace(t);
  std::vector<flip_move> out;
  for (const auto& a : td.arcs) {
    bool inc = false;
    twist r = flip_with(t, td, a.box, &inc);
    out.push_back({a.box, -1, inc, std::move(r)});
    const shape& sh = t.sh();
    out.back().to_box = td.cross_at(a.se, a.wn, sh.n);
  }
  return out;
}

// Chords of the (n+2k)-gon, vertices 0..n+2k-1.  An elbow in reduced box (r,c)
// maps to the chord [c-1, r+k-1].
struct chord {
  int a, b;        // a <= b
  bool relevant;   // at least k polygon vertices on each side
  friend bool operator==(const chord& x, const chord& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator<(const chord& x, const chord& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  }
};

inline bool chords_cross(const chord& x, const chord& y) {
  return (x.a < y.a && y.a < x.b && x.b < y.b) || (y.a < x.a && x.a < y.b && y.b < x.b);
}

inline std::vector<chord> twist_to_diagonals(const twist& t) {
  const shape& sh = t.sh();
  if (!sh.classical()) raise(errc::invariant_violation, "diagonal map needs the classical shape");
  int k = sh.k, n = sh.n, m = n + 2 * k;
  std::vector<chord> out;
  auto add = [&](int r, int c) {
    int a = c - 1, b = r + k - 1;
    if (a > b) std::swap(a, b);
    int side1 = b - a - 1, side2 = m - (b - a) - 1;
    out.push_back({a, b, side1 >= k && side2 >= k});
  };
  for (int r = 1; r <= sh.grid; ++r)
    for (int c = 1; c <= sh.grid; ++c)
      if (sh.in_shape(r, c) && t.tile_at(sh.idx(r, c)) == tile::elbow) add(r, c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace twistlab
