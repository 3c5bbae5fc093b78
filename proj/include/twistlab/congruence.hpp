#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <vector>

#include "twistlab/perm.hpp"

namespace twistlab {

// Neighbors of t under one application of the rewriting rule: exchange
// adjacent entries a < c when at least k witnesses a < b < c occur later.
inline std::vector<perm> twist_rewrite_neighbors(int k, const perm& t) {
  std::vector<perm> out;
  int n = t.size();
  for (int i = 0; i + 1 < n; ++i) {
    int a = std::min(t.at(i), t.at(i + 1)), c = std::max(t.at(i), t.at(i + 1));
    int witnesses = 0;
    for (int j = i + 2; j < n; ++j)
      if (a < t.at(j) && t.at(j) < c) ++witnesses;
    if (witnesses >= k) out.push_back(t.swapped(i));
  }
  return out;
}

// Same for the k-recoil congruence: exchange adjacent i, j with |i-j| > k.
inline std::vector<perm> recoil_rewrite_neighbors(int k, const perm& t) {
  std::vector<perm> out;
  for (int i = 0; i + 1 < t.size(); ++i)
    if (std::abs(t.at(i) - t.at(i + 1)) > k) out.push_back(t.swapped(i));
  return out;
}

template <typename NeighborFn>
inline std::vector<std::vector<perm>> rewrite_classes(int n, NeighborFn&& neighbors) {
  auto all = all_perms(n);
  std::map<perm, int> cls;
  std::vector<std::vector<perm>> classes;
  for (const auto& seed : all) {
    if (cls.count(seed)) continue;
    int id = static_cast<int>(classes.size());
    classes.push_back({});
    std::deque<perm> queue{seed};
    cls[seed] = id;
    while (!queue.empty()) {
      perm t = queue.front();
      queue.pop_front();
      classes[id].push_back(t);
      for (auto& u : neighbors(t))
        if (!cls.count(u)) {
          cls[u] = id;
          queue.push_back(u);
        }
    }
    std::sort(classes[id].begin(), classes[id].end());
  }
  return classes;
}

inline std::vector<std::vector<perm>> congruence_classes(int k, int n) {
  return rewrite_classes(n, [k](const perm& t) { return twist_rewrite_neighbors(k, t); });
}

inline std::vector<std::vector<perm>> recoil_classes(int k, int n) {
  return rewrite_classes(n, [k](const perm& t) { return recoil_rewrite_neighbors(k, t); });
}

// Minimum and maximum of a congruence class in weak order.
inline std::pair<perm, perm> class_extrema(const std::vector<perm>& cls) {
  const perm* lo = &cls[0];
  const perm* hi = &cls[0];
  for (const auto& t : cls) {
    if (coinversion_count(t) < coinversion_count(*lo)) lo = &t;
    if (coinversion_count(t) > coinversion_count(*hi)) hi = &t;
  }
  for (const auto& t : cls)
    if (!weak_leq(*lo, t) || !weak_leq(t, *hi))
      raise(errc::invariant_violation, "class is not a weak order interval");
  return {*lo, *hi};
}

// Does t contain an occurrence of (k+2)1 - (s1+1) - ... - (sk+1) for some s?
// Equivalently: an adjacent descent c > a with k witnesses a < b < c later.
inline bool contains_min_forbidden_pattern(int k, const perm& t) {
  for (int i = 0; i + 1 < t.size(); ++i) {
    if (t.at(i) <= t.at(i + 1)) continue;
    int c = t.at(i), a = t.at(i + 1), w = 0;
    for (int j = i + 2; j < t.size(); ++j)
      if (a < t.at(j) && t.at(j) < c) ++w;
    if (w >= k) return true;
  }
  return false;
}

// Occurrence of 1(k+2) - (s1+1) - ... - (sk+1): adjacent ascent with k later witnesses.
inline bool contains_max_forbidden_pattern(int k, const perm& t) {
  for (int i = 0; i + 1 < t.size(); ++i) {
    if (t.at(i) >= t.at(i + 1)) continue;
    int a = t.at(i), c = t.at(i + 1), w = 0;
    for (int j = i + 2; j < t.size(); ++j)
      if (a < t.at(j) && t.at(j) < c) ++w;
    if (w >= k) return true;
  }
  return false;
}

// Order-congruence axioms on the weak order of S_n: classes are intervals and
// both projection maps are order preserving.
inline bool verify_lattice_congruence(const std::vector<std::vector<perm>>& classes, int n,
                                      std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::map<perm, int> cls;
  std::map<perm, perm> down, up;
  long long covered = 0;
  for (int id = 0; id < (int)classes.size(); ++id) {
    const auto& c = classes[id];
    covered += (long long)c.size();
    const perm *lo = &c[0], *hi = &c[0];
    for (const auto& t : c) {
      cls[t] = id;
      if (coinversion_count(t) < coinversion_count(*lo)) lo = &t;
      if (coinversion_count(t) > coinversion_count(*hi)) hi = &t;
    }
    for (const auto& t : c)
      if (!weak_leq(*lo, t) || !weak_leq(t, *hi)) return fail("class not bounded by extrema");
    // interval: every permutation between the extrema belongs to the class
    long long between = 0;
    for (const auto& t : all_perms(n))
      if (weak_leq(*lo, t) && weak_leq(t, *hi)) ++between;
    if (between != (long long)c.size()) return fail("class is not a full interval");
    for (const auto& t : c) {
      down.emplace(t, *lo);
      up.emplace(t, *hi);
    }
  }
  if (covered != factorial(n)) return fail("classes do not partition S_n");
  for (const auto& t : all_perms(n))
    for (const auto& u : weak_covers(t)) {
      if (!weak_leq(down.at(t), down.at(u))) return fail("down projection not order preserving");
      if (!weak_leq(up.at(t), up.at(u))) return fail("up projection not order preserving");
    }
  return true;
}

}  // namespace twistlab
