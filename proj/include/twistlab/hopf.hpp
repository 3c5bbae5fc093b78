#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "twistlab/congruence.hpp"
#include "twistlab/insertion.hpp"
#include "twistlab/lattice.hpp"

namespace twistlab {

// Finite integer linear combination over an ordered basis key type.
template <typename K>
struct formal_sum {
  std::map<K, long long> terms;

  formal_sum() = default;
  formal_sum(const K& k, long long c = 1) { add(k, c); }

  void add(const K& k, long long c) {
    if (!c) return;
    auto it = terms.find(k);
    if (it == terms.end()) terms.emplace(k, c);
    else if (!(it->second += c)) terms.erase(it);
  }
  formal_sum& operator+=(const formal_sum& o) {
    for (auto& [k, c] : o.terms) add(k, c);
    return *this;
  }
  friend formal_sum operator+(formal_sum a, const formal_sum& b) { return a += b; }
  friend bool operator==(const formal_sum& a, const formal_sum& b) { return a.terms == b.terms; }
  long long coeff(const K& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? 0 : it->second;
  }
  size_t term_count() const { return terms.size(); }
  bool boolean() const {
    for (auto& [k, c] : terms)
      if (c != 1) return false;
    return true;
  }
};

template <typename K>
using tensor_sum = formal_sum<std::pair<K, K>>;

// Bilinear extension of a basis-level product.
template <typename K, typename F>
formal_sum<K> bilinear(const formal_sum<K>& a, const formal_sum<K>& b, F&& on_basis) {
  formal_sum<K> out;
  for (auto& [x, cx] : a.terms)
    for (auto& [y, cy] : b.terms) {
      formal_sum<K> part = on_basis(x, y);
      for (auto& [k, c] : part.terms) out.add(k, c * cx * cy);
    }
  return out;
}

// ---------------------------------------------------------------------------
// FQSym on (signed) permutations.

template <typename P>
formal_sum<P> product_F_basis(const P& a, const P& b) {
  formal_sum<P> out;
  for (auto& s : shifted_shuffle(a, b)) out.add(s, 1);
  return out;
}

template <typename P>
formal_sum<P> product_F(const formal_sum<P>& a, const formal_sum<P>& b) {
  return bilinear(a, b, product_F_basis<P>);
}

inline perm restriction_std(const perm& t, int lo, int hi) {  // values in [lo, hi]
  std::vector<int> word;
  for (int i = 0; i < t.size(); ++i)
    if (lo <= t.at(i) && t.at(i) <= hi) word.push_back(t.at(i));
  return standardize(word);
}

inline signed_perm restriction_std(const signed_perm& s, int lo, int hi) {
  std::vector<int> word, values;
  for (int i = 0; i < s.size(); ++i)
    if (lo <= s.p.at(i) && s.p.at(i) <= hi) word.push_back(s.p.at(i));
  values = word;
  std::sort(values.begin(), values.end());
  std::vector<std::vector<int8_t>> signs(s.layers(), std::vector<int8_t>(word.size()));
  for (int r = 0; r < s.layers(); ++r)
    for (size_t i = 0; i < values.size(); ++i) signs[r][i] = s.signs[r][values[i] - 1];
  return signed_perm(standardize(word), signs);
}

inline perm prefix_std(const perm& t, int p, bool suffix) {
  std::vector<int> word;
  for (int i = (suffix ? p : 0); i < (suffix ? t.size() : p); ++i) word.push_back(t.at(i));
  return standardize(word);
}

inline signed_perm prefix_std(const signed_perm& s, int p, bool suffix) {
  std::vector<int> word, values;
  for (int i = (suffix ? p : 0); i < (suffix ? s.size() : p); ++i) word.push_back(s.p.at(i));
  values = word;
  std::sort(values.begin(), values.end());
  std::vector<std::vector<int8_t>> signs(s.layers(), std::vector<int8_t>(word.size()));
  for (int r = 0; r < s.layers(); ++r)
    for (size_t i = 0; i < values.size(); ++i) signs[r][i] = s.signs[r][values[i] - 1];
  return signed_perm(standardize(word), signs);
}

// Convolution coproduct: split the one-line word at every position.
template <typename P>
tensor_sum<P> coproduct_F_basis(const P& s) {
  tensor_sum<P> out;
  int n = s.size();
  for (int p = 0; p <= n; ++p) out.add({prefix_std(s, p, false), prefix_std(s, p, true)}, 1);
  return out;
}

template <typename P>
tensor_sum<P> coproduct_F(const formal_sum<P>& a) {
  tensor_sum<P> out;
  for (auto& [s, c] : a.terms) {
    tensor_sum<P> part = coproduct_F_basis(s);
    for (auto& [k, v] : part.terms) out.add(k, v * c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The twist subalgebra: P basis.

inline formal_sum<perm> P_expand(const twist& t) {
  formal_sum<perm> out;
  for (auto& s : fiber(t)) out.add(s, 1);
  return out;
}

inline perm under_perm(const perm& a, const perm& b) {
  std::vector<int> w = a.word();
  for (int v : b.word()) w.push_back(v + a.size());
  return perm(std::move(w));
}

inline perm over_perm(const perm& a, const perm& b) {
  std::vector<int> w;
  for (int v : b.word()) w.push_back(v + a.size());
  for (int v : a.word()) w.push_back(v);
  return perm(std::move(w));
}

// T \ T': T in the first rows and columns of T'.
inline twist under_twist(const twist& a, const twist& b) {
  return insert_permutation(a.k(), under_perm(fiber_min(a), fiber_min(b)));
}
inline twist over_twist(const twist& a, const twist& b) {
  return insert_permutation(a.k(), over_perm(fiber_min(a), fiber_min(b)));
}

namespace detail {
inline const twist_lattice& cached_flip_lattice(int k, int n) {
  static std::map<std::pair<int, int>, twist_lattice> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(k, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, increasing_flip_lattice(k, n)).first;
  return it->second;
}
}  // namespace detail

// Product: the interval [T\T', T/T'] of the increasing flip lattice.
inline formal_sum<twist> product_P(const twist& a, const twist& b) {
  if (a.k() != b.k()) raise(errc::mixed_basis, "twist product needs equal k");
  int k = a.k(), n = a.n() + b.n();
  const twist_lattice& L = detail::cached_flip_lattice(k, n);
  int lo = L.index_of(under_twist(a, b)), hi = L.index_of(over_twist(a, b));
  if (lo < 0 || hi < 0) raise(errc::invariant_violation, "product endpoints missing");
  formal_sum<twist> out;
  for (int i = 0; i < (int)L.elems.size(); ++i)
    if (L.order.leq(lo, i) && L.order.leq(i, hi)) out.add(L.elems[i], 1);
  return out;
}

// Pipe deletion of a whole down-set of the contact order.
inline twist delete_pipes(const twist& t, mask_t down_set) {
  contact_graph g = contact_graph::of(t);
  if (!g.acyclic) raise(errc::cyclic_twist, "deletion set in a cyclic twist");
  std::vector<int> labels;
  for (int i = 1; i <= t.n(); ++i) labels.push_back(i);
  labeled_twist lt{t, labels};
  // delete minimal elements of the set first
  std::vector<mask_t> pred(t.n(), 0);
  for (int i = 0; i < t.n(); ++i)
    for (int j = 0; j < t.n(); ++j)
      if ((g.closure.above[i] >> j) & 1) pred[j] |= bit(i);
  mask_t left = down_set;
  while (left) {
    for (int v = 0; v < t.n(); ++v)
      if (((left >> v) & 1) && (pred[v] & left) == 0) {
        lt = pipe_delete(lt, v + 1);
        left &= ~bit(v);
        break;
      }
  }
  return lt.t;
}

// Coproduct over cuts of the contact graph, enumerated as down-sets.
inline tensor_sum<twist> coproduct_P(const twist& t) {
  contact_graph g = contact_graph::of(t);
  if (!g.acyclic) raise(errc::cyclic_twist, "coproduct of a cyclic twist");
  int n = t.n();
  std::vector<mask_t> pred(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((g.closure.above[i] >> j) & 1) pred[j] |= bit(i);
  tensor_sum<twist> out;
  for (mask_t d = 0; d < (mask_t{1} << n); ++d) {
    bool ideal = true;
    for (int v = 0; v < n && ideal; ++v)
      if (((d >> v) & 1) && (pred[v] & ~d) != 0) ideal = false;
    if (!ideal) continue;
    twist upper = delete_pipes(t, d);
    // lower tensor legs: insertions of the linear extensions of the restriction
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if ((d >> v) & 1) members.push_back(v + 1);
    std::vector<std::pair<int, int>> arcs;
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        if (((d >> (a - 1)) & 1) && ((d >> (b - 1)) & 1) && g.closure.less(a, b)) {
          int ia = int(std::lower_bound(members.begin(), members.end(), a) - members.begin()) + 1;
          int ib = int(std::lower_bound(members.begin(), members.end(), b) - members.begin()) + 1;
          arcs.emplace_back(ia, ib);
        }
    std::set<twist> lowers;
    for (const auto& ext : linear_extensions(poset::closure_of((int)members.size(), arcs)))
      lowers.insert(insert_permutation(t.k(), ext));
    for (const auto& lo : lowers) out.add({lo, upper}, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dual basis Q.

// T' |> (tau . X): relabel T' by the complement of X and insert the elements
// of X in the positions prescribed by tau, from right to left.
inline twist insert_positions(const twist& tprime, const perm& tau,
                              const std::vector<int>& X, int total) {
  std::vector<int> rest;
  std::vector<bool> in_x(total + 1, false);
  for (int x : X) in_x[x] = true;
  for (int v = 1; v <= total; ++v)
    if (!in_x[v]) rest.push_back(v);
  if ((int)rest.size() != tprime.n()) raise(errc::size_mismatch, "bad relabeling");
  labeled_twist lt{tprime, rest};
  for (int i = tau.size() - 1; i >= 0; --i) lt = pipe_insert(lt, X[tau.at(i) - 1]);
  return lt.t;
}

inline formal_sum<twist> Q_product(const twist& a, const twist& b) {
  if (a.k() != b.k()) raise(errc::mixed_basis, "twist product needs equal k");
  int n = a.n(), m = b.n();
  perm tau = fiber_min(a);
  formal_sum<twist> out;
  std::vector<int> X;
  std::function<void(int)> rec = [&](int next) {
    if ((int)X.size() == n) {
      out.add(insert_positions(b, tau, X, n + m), 1);
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

inline tensor_sum<twist> Q_coproduct(const twist& t) {
  perm rep = fiber_min(t);
  tensor_sum<twist> out;
  int m = t.n();
  for (int p = 0; p <= m; ++p)
    out.add({insert_permutation(t.k(), restriction_std(rep, 1, p)),
             insert_permutation(t.k(), restriction_std(rep, p + 1, m))},
            1);
  return out;
}

// Pairing <P_T, Q_T'> computed through the F / G expansions.
inline long long PQ_pairing(const twist& a, const twist& b) {
  if (a.k() != b.k() || a.n() != b.n()) return 0;
  return P_expand(a).coeff(fiber_min(b));
}

// ---------------------------------------------------------------------------
// Multiplicative bases and indecomposables.

// E^T expanded in the P basis: the upper flip-lattice ideal of T.
inline formal_sum<twist> E_to_P(const twist& t) {
  const twist_lattice& L = detail::cached_flip_lattice(t.k(), t.n());
  int a = L.index_of(t);
  if (a < 0) raise(errc::invariant_violation, "twist not in lattice");
  formal_sum<twist> out;
  L.order.up[a].for_each([&](int i) { out.add(L.elems[i], 1); });
  return out;
}

inline formal_sum<twist> H_to_P(const twist& t) {
  const twist_lattice& L = detail::cached_flip_lattice(t.k(), t.n());
  int a = L.index_of(t);
  if (a < 0) raise(errc::invariant_violation, "twist not in lattice");
  formal_sum<twist> out;
  L.order.down[a].for_each([&](int i) { out.add(L.elems[i], 1); });
  return out;
}

inline formal_sum<perm> E_to_F(const twist& t) {
  perm mu = fiber_min(t);
  formal_sum<perm> out;
  for (const auto& s : all_perms(t.n()))
    if (weak_leq(mu, s)) out.add(s, 1);
  return out;
}

// A prefix cut ([j], [n]\[j]) of the contact graph.
inline bool has_prefix_cut(const twist& t) {
  contact_graph g = contact_graph::of(t);
  for (int j = 1; j < t.n(); ++j) {
    bool cut = true;
    for (auto [se, wn] : g.arcs)
      if (wn <= j && se > j) { cut = false; break; }
    if (cut) return true;
  }
  return false;
}

inline bool is_E_indecomposable(const twist& t) {
  perm mu = fiber_min(t);
  mask_t seen = 0;
  for (int i = 0; i + 1 < mu.size(); ++i) {
    seen |= bit(mu.at(i) - 1);
    if (seen == (bit(i + 1) - 1)) return false;  // mu([j]) = [j]
  }
  return true;
}

// Change of basis between the multiplicative bases and the P basis on one
// graded piece.
struct eh_basis_data {
  std::vector<twist> basis;                 // acyclic twists, canonical order
  std::vector<formal_sum<twist>> E_in_P;    // column t: E^t expanded in P
  std::vector<formal_sum<twist>> H_in_P;
};

inline eh_basis_data E_H_bases(int k, int n) {
  eh_basis_data d;
  d.basis = detail::cached_flip_lattice(k, n).elems;
  for (const auto& t : d.basis) {
    d.E_in_P.push_back(E_to_P(t));
    d.H_in_P.push_back(H_to_P(t));
  }
  return d;
}

inline long long count_indecomposables(int k, int n) {
  std::set<twist> acyclic;
  for (const auto& t : all_perms(n)) acyclic.insert(insert_permutation(k, t));
  long long c = 0;
  for (const auto& t : acyclic)
    if (is_E_indecomposable(t)) ++c;
  return c;
}

// ---------------------------------------------------------------------------
// Integer point transforms.

struct truncated_series {
  int nvars = 0;
  int degree = 0;  // total degree cap
  std::map<std::vector<int>, long long> coeffs;

  void add(const std::vector<int>& e, long long c) {
    if (!c) return;
    auto it = coeffs.find(e);
    if (it == coeffs.end()) coeffs.emplace(e, c);
    else if (!(it->second += c)) coeffs.erase(it);
  }
  friend bool operator==(const truncated_series& a, const truncated_series& b) {
    return a.nvars == b.nvars && a.degree == b.degree && a.coeffs == b.coeffs;
  }
  truncated_series& operator+=(const truncated_series& o) {
    for (auto& [e, c] : o.coeffs) add(e, c);
    return *this;
  }
  friend truncated_series operator*(const truncated_series& a, const truncated_series& b) {
    truncated_series r;
    r.nvars = a.nvars;
    r.degree = a.degree;
    for (auto& [e1, c1] : a.coeffs)
      for (auto& [e2, c2] : b.coeffs) {
        int total = 0;
        std::vector<int> e(r.nvars);
        for (int i = 0; i < r.nvars; ++i) total += (e[i] = e1[i] + e2[i]);
        if (total <= r.degree) r.add(e, c1 * c2);
      }
    return r;
  }
};

inline truncated_series series_one(int nvars, int degree) {
  truncated_series s;
  s.nvars = nvars;
  s.degree = degree;
  s.add(std::vector<int>(nvars, 0), 1);
  return s;
}

// Direct lattice point enumeration of the half-open cone of a strict order:
// x >= 0, x_i <= x_j for i < j in the order with i < j as integers, and
// x_i < x_j when i > j as integers.
inline truncated_series integer_point_transform(const poset& p, int degree) {
  if (degree > 8) raise(errc::invariant_violation, "truncation degree capped at 8");
  int n = p.n;
  truncated_series s;
  s.nvars = n;
  s.degree = degree;
  std::vector<int> x(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      bool ok = true;
      for (int a = 1; a <= n && ok; ++a)
        for (int b = 1; b <= n && ok; ++b)
          if (p.less(a, b)) {
            if (a < b ? !(x[a - 1] <= x[b - 1]) : !(x[a - 1] < x[b - 1])) ok = false;
          }
      if (ok) s.add(x, 1);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      x[i] = v;
      rec(i + 1, left - v);
    }
    x[i] = 0;
  };
  rec(0, degree);
  return s;
}

inline truncated_series integer_point_transform(const perm& t, int degree) {
  return integer_point_transform(poset::chain_of(t), degree);
}

inline truncated_series integer_point_transform(const twist& t, int degree) {
  contact_graph g = contact_graph::of(t);
  if (!g.acyclic) raise(errc::cyclic_input, "transform of a cyclic twist");
  return integer_point_transform(g.closure, degree);
}

// Geometric series 1 / (1 - t_{tau_i} ... t_{tau_n}) truncated.
inline truncated_series chain_factor(const perm& t, int i, int degree) {
  int n = t.size();
  truncated_series s = series_one(n, degree);
  std::vector<int> step(n, 0);
  for (int j = i; j <= n; ++j) step[t.at(j - 1) - 1] = 1;
  int weight = n - i + 1;
  std::vector<int> e(n, 0);
  for (int m = 1; m * weight <= degree; ++m) {
    for (int j = 0; j < n; ++j) e[j] = m * step[j];
    s.add(e, 1);
  }
  return s;
}

// Closed form for the transform of a chain.  The published numerator takes
// t_{tau_i}...t_{tau_n} at each descent i; the exact version starts at i+1.
inline truncated_series ipt_closed_form(const perm& t, int degree, bool published_numerator) {
  int n = t.size();
  truncated_series s = series_one(n, degree);
  for (int i = 1; i <= n; ++i) s = s * chain_factor(t, i, degree);
  std::vector<int> numer(n, 0);
  for (int i = 1; i < n; ++i)
    if (t.at(i - 1) > t.at(i))
      for (int j = (published_numerator ? i : i + 1); j <= n; ++j) ++numer[t.at(j - 1) - 1];
  truncated_series monomial;
  monomial.nvars = n;
  monomial.degree = degree;
  int total = 0;
  for (int v : numer) total += v;
  if (total <= degree) monomial.add(numer, 1);
  return s * monomial;
}

// Shift Z(t_1..t_m) into variables t_{off+1}..t_{off+m} of an n-variable ring.
inline truncated_series embed_series(const truncated_series& s, int off, int nvars) {
  truncated_series r;
  r.nvars = nvars;
  r.degree = s.degree;
  for (auto& [e, c] : s.coeffs) {
    std::vector<int> f(nvars, 0);
    for (int i = 0; i < s.nvars; ++i) f[off + i] = e[i];
    r.add(f, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// k-twistiform operations.

// Words over {l, m, r} of length k; the first k letters of the shuffle are
// constrained to come from the left / either / right operand.
inline void twistiform_rec(const std::string& ops, size_t oi, std::vector<int>& acc,
                           const std::vector<int>& X, size_t xi, const std::vector<int>& Y,
                           size_t yi, std::vector<std::vector<int>>& out) {
  if (oi < ops.size()) {
    char c = ops[oi];
    if ((c == 'l' || c == 'm') && xi < X.size()) {
      acc.push_back(X[xi]);
      twistiform_rec(ops, oi + 1, acc, X, xi + 1, Y, yi, out);
      acc.pop_back();
    }
    if ((c == 'r' || c == 'm') && yi < Y.size()) {
      acc.push_back(Y[yi]);
      twistiform_rec(ops, oi + 1, acc, X, xi, Y, yi + 1, out);
      acc.pop_back();
    }
    return;
  }
  if (xi == X.size() && yi == Y.size()) {
    out.push_back(acc);
    return;
  }
  if (xi < X.size()) {
    acc.push_back(X[xi]);
    twistiform_rec(ops, oi, acc, X, xi + 1, Y, yi, out);
    acc.pop_back();
  }
  if (yi < Y.size()) {
    acc.push_back(Y[yi]);
    twistiform_rec(ops, oi, acc, X, xi, Y, yi + 1, out);
    acc.pop_back();
  }
}

inline formal_sum<perm> twistiform_op_basis(const std::string& ops, const perm& a, const perm& b,
                                            bool mirrored) {
  for (char c : ops)
    if (c != 'l' && c != 'm' && c != 'r') raise(errc::bad_operator_length, "operator letters");
  std::vector<int> X = a.word(), Y;
  for (int v : b.word()) Y.push_back(v + a.size());
  if (mirrored) {
    std::reverse(X.begin(), X.end());
    std::reverse(Y.begin(), Y.end());
  }
  std::vector<std::vector<int>> words;
  std::vector<int> acc;
  twistiform_rec(ops, 0, acc, X, 0, Y, 0, words);
  formal_sum<perm> out;
  for (auto& w : words) {
    if (mirrored) std::reverse(w.begin(), w.end());
    out.add(perm(w), 1);
  }
  return out;
}

inline formal_sum<perm> twistiform_op(const std::string& ops, const formal_sum<perm>& a,
                                      const formal_sum<perm>& b, bool mirrored = false) {
  return bilinear(a, b, [&](const perm& x, const perm& y) {
    return twistiform_op_basis(ops, x, y, mirrored);
  });
}

// All operator strings of length k.
inline std::vector<std::string> twistiform_ops(int k) {
  std::vector<std::string> out{""};
  for (int i = 0; i < k; ++i) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : {'l', 'm', 'r'}) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

// The four operators of one associativity relation, indexed by a word over {x,y,z}.
struct twistiform_relation {
  std::string w;        // over x,y,z
  std::string op0, op1, op2, op3;  // x op0 (y op1 z) = (x op2 y) op3 z
};

// All split and associativity relations on nonempty operands of total size
// at most n_max.
inline bool twistiform_relations_check(int k, int n_max);

inline twistiform_relation associativity_relation(const std::string& w) {
  twistiform_relation r;
  r.w = w;
  std::string yz, xy;
  for (char c : w) {
    if (c != 'x') yz += c;
    if (c != 'z') xy += c;
  }
  int k = (int)w.size();
  for (int p = 0; p < k; ++p) {
    r.op0 += (w[p] == 'x') ? 'l' : 'r';
    r.op1 += (p < (int)yz.size()) ? (yz[p] == 'y' ? 'l' : 'r') : 'm';
    r.op2 += (p < (int)xy.size()) ? (xy[p] == 'x' ? 'l' : 'r') : 'm';
    r.op3 += (w[p] == 'z') ? 'r' : 'l';
  }
  return r;
}

inline bool twistiform_relations_check(int k, int n_max) {
  for (int split = 0; split < k; ++split)
    for (const auto& head : twistiform_ops(split))
      for (const auto& tail : twistiform_ops(k - 1 - split))
        for (int a = 1; a < n_max; ++a)
          for (int b = 1; a + b <= n_max; ++b)
            for (const auto& x : all_perms(a))
              for (const auto& y : all_perms(b)) {
                formal_sum<perm> fx(x), fy(y);
                if (twistiform_op(head + 'm' + tail, fx, fy) !=
                    twistiform_op(head + 'l' + tail, fx, fy) +
                        twistiform_op(head + 'r' + tail, fx, fy))
                  return false;
              }
  std::vector<std::string> words{""};
  for (int i = 0; i < k; ++i) {
    std::vector<std::string> next;
    for (auto& w : words)
      for (char c : {'x', 'y', 'z'}) next.push_back(w + c);
    words = std::move(next);
  }
  for (const auto& w : words) {
    auto rel = associativity_relation(w);
    for (int a = 1; a < n_max; ++a)
      for (int b = 1; a + b < n_max; ++b)
        for (int c = 1; a + b + c <= n_max; ++c)
          for (const auto& x : all_perms(a))
            for (const auto& y : all_perms(b))
              for (const auto& z : all_perms(c)) {
                formal_sum<perm> fx(x), fy(y), fz(z);
                if (twistiform_op(rel.op0, fx, twistiform_op(rel.op1, fy, fz)) !=
                    twistiform_op(rel.op3, twistiform_op(rel.op2, fx, fy), fz))
                  return false;
              }
  }
  return true;
}

}  // namespace twistlab
