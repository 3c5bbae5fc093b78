#pragma once

// Test-only reference computations, kept independent of the library paths
// they are used to check.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "twistlab/perm.hpp"

namespace oracles {

using twistlab::perm;

// Hand-rolled coinversion set straight from the definition.
inline std::set<std::pair<int, int>> coinv_set(const perm& t) {
  std::set<std::pair<int, int>> s;
  for (int i = 1; i <= t.size(); ++i)
    for (int j = i + 1; j <= t.size(); ++j)
      if (t.pos_of(i) > t.pos_of(j)) s.insert({i, j});
  return s;
}

inline bool weak_leq_brute(const perm& a, const perm& b) {
  auto sa = coinv_set(a), sb = coinv_set(b);
  return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

// Meet in the weak order by scanning all common lower bounds (small n only).
inline std::optional<perm> weak_meet_brute(const perm& a, const perm& b,
                                           const std::vector<perm>& all) {
  std::vector<perm> lower;
  for (const auto& c : all)
    if (weak_leq_brute(c, a) && weak_leq_brute(c, b)) lower.push_back(c);
  for (const auto& m : lower) {
    bool top = true;
    for (const auto& c : lower)
      if (!weak_leq_brute(c, m)) { top = false; break; }
    if (top) return m;
  }
  return std::nullopt;
}

inline std::optional<perm> weak_join_brute(const perm& a, const perm& b,
                                           const std::vector<perm>& all) {
  std::vector<perm> upper;
  for (const auto& c : all)
    if (weak_leq_brute(a, c) && weak_leq_brute(b, c)) upper.push_back(c);
  for (const auto& m : upper) {
    bool bottom = true;
    for (const auto& c : upper)
      if (!weak_leq_brute(m, c)) { bottom = false; break; }
    if (bottom) return m;
  }
  return std::nullopt;
}

// Filter S_n for linear extensions of a relation given as arc list.
inline std::vector<perm> lin_ext_brute(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<perm> out;
  for (const auto& t : twistlab::all_perms(n)) {
    bool ok = true;
    for (auto [a, b] : arcs)
      if (t.pos_of(a) > t.pos_of(b)) { ok = false; break; }
    if (ok) out.push_back(t);
  }
  return out;
}

// Plain binary search tree built by inserting values right to left.
struct bst {
  std::map<int, std::pair<int, int>> node;  // value -> (left child, right child), 0 = none
  int root = 0;

  void insert(int v) {
    if (!root) { root = v; node[v] = {0, 0}; return; }
    int cur = root;
    while (true) {
      auto& [l, r] = node[cur];
      int& next = v < cur ? l : r;
      if (!next) { next = v; node[v] = {0, 0}; return; }
      cur = next;
    }
  }
  static bst of(const perm& t) {
    bst b;
    for (int i = t.size() - 1; i >= 0; --i) b.insert(t.at(i));
    return b;
  }
  // arcs child -> parent
  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> out;
    for (auto& [v, ch] : node) {
      if (ch.first) out.push_back({ch.first, v});
      if (ch.second) out.push_back({ch.second, v});
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // Loday coordinate of node i: (#leaves of left subtree) * (#leaves right)
  std::vector<long long> loday() const {
    std::map<int, long long> leaves;
    std::function<long long(int)> count = [&](int v) -> long long {
      if (!v) return 1;
      auto [l, r] = node.at(v);
      return leaves[v] = count(l) + count(r);
    };
    count(root);
    std::vector<long long> x;
    for (int v = 1; v <= (int)node.size(); ++v) {
      auto [l, r] = node.at(v);
      long long ll = l ? leaves[l] : 1, rr = r ? leaves[r] : 1;
      x.push_back(ll * rr);
    }
    return x;
  }
  // canopy sign vector: entry i is '+' unless node i is above node i+1
  std::vector<int> canopy() const {
    int n = (int)node.size();
    std::vector<int> depthless;  // ancestor test via paths
    std::vector<int> out;
    auto is_ancestor = [&](int a, int b) {  // a strict ancestor of b
      int cur = root;
      while (cur && cur != b) {
        if (cur == a) return true;
        cur = b < cur ? node.at(cur).first : node.at(cur).second;
      }
      return false;
    };
    for (int i = 1; i < n; ++i) out.push_back(is_ancestor(i, i + 1) ? -1 : +1);
    return out;
  }
};

}  // namespace oracles
