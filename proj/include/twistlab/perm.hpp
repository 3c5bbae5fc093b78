#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "twistlab/core.hpp"

namespace twistlab {

// Permutation of [n] in one-line notation, inverse cached.
class perm {
 public:
  perm() = default;
  explicit perm(std::vector<int> word) : w_(std::move(word)) { rebuild(); }

  int size() const { return static_cast<int>(w_.size()); }
  int at(int pos) const { return w_[pos]; }                 // value at position pos (0-based pos, values 1..n)
  int pos_of(int value) const { return inv_[value - 1]; }   // 0-based position of a value
  const std::vector<int>& word() const { return w_; }

  static perm identity(int n) {
    std::vector<int> w(n);
    for (int i = 0; i < n; ++i) w[i] = i + 1;
    return perm(std::move(w));
  }

  perm swapped(int pos) const {  // exchange entries at positions pos, pos+1
    std::vector<int> w = w_;
    std::swap(w[pos], w[pos + 1]);
    return perm(std::move(w));
  }

  friend bool operator==(const perm& a, const perm& b) { return a.w_ == b.w_; }
  friend bool operator!=(const perm& a, const perm& b) { return a.w_ != b.w_; }
  friend bool operator<(const perm& a, const perm& b) { return a.w_ < b.w_; }

  std::string str() const {
    std::string s;
    bool wide = size() > 9;
    for (int i = 0; i < size(); ++i) {
      if (wide && i) s += ',';
      s += std::to_string(w_[i]);
    }
    return s;
  }

 private:
  void rebuild() {
    int n = size();
    inv_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      int v = w_[i];
      if (v < 1 || v > n || inv_[v - 1] != -1)
        raise(errc::invariant_violation, "not a permutation: " + std::to_string(v));
      inv_[v - 1] = i;
    }
  }

  std::vector<int> w_;
  std::vector<int> inv_;
};

inline std::vector<perm> all_perms(int n) {
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = i + 1;
  std::vector<perm> out;
  do out.emplace_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// Standardization of a word with distinct entries.
inline perm standardize(const std::vector<int>& word) {
  std::vector<int> sorted = word;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> w(word.size());
  for (size_t i = 0; i < word.size(); ++i)
    w[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), word[i]) - sorted.begin()) + 1;
  return perm(std::move(w));
}

// Coinversions: pairs (i, j), i < j, with i after j in the one-line word.
inline std::vector<std::pair<int, int>> coinversions(const perm& t) {
  std::vector<std::pair<int, int>> out;
  int n = t.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (t.pos_of(i) > t.pos_of(j)) out.emplace_back(i, j);
  return out;
}

inline int coinversion_count(const perm& t) {
  int c = 0, n = t.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (t.pos_of(i) > t.pos_of(j)) ++c;
  return c;
}

// Weak order: inclusion of coinversion sets.
inline bool weak_leq(const perm& a, const perm& b) {
  if (a.size() != b.size()) raise(errc::size_mismatch, "weak_leq on different sizes");
  int n = a.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (a.pos_of(i) > a.pos_of(j) && b.pos_of(i) < b.pos_of(j)) return false;
  return true;
}

// Covers going up: swap an ascent.
inline std::vector<perm> weak_covers(const perm& t) {
  std::vector<perm> out;
  for (int i = 0; i + 1 < t.size(); ++i)
    if (t.at(i) < t.at(i + 1)) out.push_back(t.swapped(i));
  return out;
}

inline std::vector<perm> weak_cocovers(const perm& t) {
  std::vector<perm> out;
  for (int i = 0; i + 1 < t.size(); ++i)
    if (t.at(i) > t.at(i + 1)) out.push_back(t.swapped(i));
  return out;
}

// Strict partial order on [n] as successor masks, n <= 64.
struct poset {
  int n = 0;
  std::vector<mask_t> above;  // above[i-1] = mask of j-1 with i < j in the order

  bool less(int i, int j) const { return (above[i - 1] >> (j - 1)) & 1; }

  // Transitive closure of arc list; fails on directed cycles.
  static poset closure_of(int n, const std::vector<std::pair<int, int>>& arcs) {
    poset p = try_closure_of(n, arcs);
    if (p.n == 0 && n > 0) raise(errc::cyclic_input, "relation has a directed cycle");
    return p;
  }

  // Returns n == 0 sentinel when cyclic (callers that need the flag).
  static poset try_closure_of(int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<mask_t> adj(n, 0);
    for (auto [a, b] : arcs) {
      if (a == b) return {};
      adj[a - 1] |= bit(b - 1);
    }
    // Floyd-Warshall style closure on masks.
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if ((adj[i] >> k) & 1) adj[i] |= adj[k];
    for (int i = 0; i < n; ++i)
      if ((adj[i] >> i) & 1) return {};
    poset p;
    p.n = n;
    p.above = std::move(adj);
    return p;
  }

  static poset chain_of(const perm& t) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i + 1 < t.size(); ++i) arcs.emplace_back(t.at(i), t.at(i + 1));
    return closure_of(t.size(), arcs);
  }

  bool is_linear_extension(const perm& t) const {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (less(i, j) && t.pos_of(i) > t.pos_of(j)) return false;
    return true;
  }
};

// All linear extensions, lexicographically sorted, duplicate-free.
inline std::vector<perm> linear_extensions(const poset& p) {
  std::vector<mask_t> pred(p.n, 0);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if ((p.above[i] >> j) & 1) pred[j] |= bit(i);
  std::vector<perm> out;
  std::vector<int> word;
  word.reserve(p.n);
  mask_t placed = 0;
  std::function<void()> rec = [&] {
    if (static_cast<int>(word.size()) == p.n) {
      out.emplace_back(word);
      return;
    }
    for (int v = 0; v < p.n; ++v) {
      if ((placed >> v) & 1) continue;
      if ((pred[v] & ~placed) != 0) continue;
      placed |= bit(v);
      word.push_back(v + 1);
      rec();
      word.pop_back();
      placed &= ~bit(v);
    }
  };
  rec();
  return out;
}

// Permutation with an optional tuple of sign vectors attached to its values.
// signs[r][v-1] is the r-th sign (+1/-1) of value v.
struct signed_perm {
  perm p;
  std::vector<std::vector<int8_t>> signs;

  signed_perm() = default;
  explicit signed_perm(perm q, std::vector<std::vector<int8_t>> s = {}) : p(std::move(q)), signs(std::move(s)) {
    for (const auto& row : signs)
      if (static_cast<int>(row.size()) != p.size())
        raise(errc::size_mismatch, "sign vector length != permutation size");
  }

  int size() const { return p.size(); }
  int layers() const { return static_cast<int>(signs.size()); }

  // v-signature of layer r as +/- string (indexed by value).
  std::string vsig(int r) const {
    std::string s;
    for (int v = 1; v <= size(); ++v) s += signs[r][v - 1] > 0 ? '+' : '-';
    return s;
  }
  signed_perm layer(int r) const { return signed_perm(p, {signs[r]}); }

  friend bool operator==(const signed_perm& a, const signed_perm& b) {
    return a.p == b.p && a.signs == b.signs;
  }
  friend bool operator<(const signed_perm& a, const signed_perm& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.signs < b.signs;
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < size(); ++i) {
      int v = p.at(i);
      for (int r = 0; r < layers(); ++r) s += signs[r][v - 1] > 0 ? '+' : '-';
      s += std::to_string(v);
    }
    return s;
  }
};

// Shifted shuffle: values of b are shifted up by |a|; signs travel with values.
inline std::vector<signed_perm> shifted_shuffle(const signed_perm& a, const signed_perm& b) {
  if (a.layers() != b.layers()) raise(errc::size_mismatch, "shuffle with different sign layers");
  int n = a.size(), m = b.size();
  std::vector<std::vector<int8_t>> signs(a.layers());
  for (int r = 0; r < a.layers(); ++r) {
    signs[r] = a.signs[r];
    signs[r].insert(signs[r].end(), b.signs[r].begin(), b.signs[r].end());
  }
  std::vector<signed_perm> out;
  std::vector<int> word(n + m);
  std::function<void(int, int, int)> rec = [&](int i, int j, int k) {
    if (k == n + m) {
      out.emplace_back(perm(word), signs);
      return;
    }
    if (i < n) { word[k] = a.p.at(i); rec(i + 1, j, k + 1); }
    if (j < m) { word[k] = b.p.at(j) + n; rec(i, j + 1, k + 1); }
  };
  rec(0, 0, 0);
  return out;
}

// Convolution: signs stay at their positions.
inline std::vector<signed_perm> convolution(const signed_perm& a, const signed_perm& b) {
  if (a.layers() != b.layers()) raise(errc::size_mismatch, "convolution with different sign layers");
  int n = a.size(), m = b.size(), L = a.layers();
  // Position-signatures of the concatenation.
  std::vector<std::vector<int8_t>> psig(L, std::vector<int8_t>(n + m));
  for (int r = 0; r < L; ++r) {
    for (int i = 0; i < n; ++i) psig[r][i] = a.signs[r][a.p.at(i) - 1];
    for (int j = 0; j < m; ++j) psig[r][n + j] = b.signs[r][b.p.at(j) - 1];
  }
  std::vector<signed_perm> out;
  int total = n + m;
  std::vector<int> low;  // values placed on the first block
  low.reserve(n);
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(low.size()) == n) {
      std::vector<bool> used(total + 1, false);
      for (int v : low) used[v] = true;
      std::vector<int> high;
      for (int v = 1; v <= total; ++v)
        if (!used[v]) high.push_back(v);
      std::vector<int> word(total);
      for (int i = 0; i < n; ++i) word[i] = low[a.p.at(i) - 1];
      for (int j = 0; j < m; ++j) word[n + j] = high[b.p.at(j) - 1];
      std::vector<std::vector<int8_t>> vsig(L, std::vector<int8_t>(total));
      for (int r = 0; r < L; ++r)
        for (int i = 0; i < total; ++i) vsig[r][word[i] - 1] = psig[r][i];
      out.emplace_back(perm(word), vsig);
      return;
    }
    for (int v = next; v <= total; ++v) {
      low.push_back(v);
      rec(v + 1);
      low.pop_back();
    }
  };
  rec(1);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<perm> shifted_shuffle(const perm& a, const perm& b) {
  std::vector<perm> out;
  for (auto& s : shifted_shuffle(signed_perm(a), signed_perm(b))) out.push_back(s.p);
  return out;
}

inline std::vector<perm> convolution(const perm& a, const perm& b) {
  std::vector<perm> out;
  for (auto& s : convolution(signed_perm(a), signed_perm(b))) out.push_back(s.p);
  return out;
}

inline perm parse_perm(const std::string& s) {
  std::vector<int> w;
  if (s.find(',') != std::string::npos) {
    size_t i = 0;
    while (i < s.size()) {
      size_t j = s.find(',', i);
      if (j == std::string::npos) j = s.size();
      w.push_back(std::atoi(s.substr(i, j - i).c_str()));
      i = j + 1;
    }
  } else {
    for (char c : s) {
      if (c < '1' || c > '9') raise(errc::parse_error, "bad permutation character");
      w.push_back(c - '0');
    }
  }
  try {
    return perm(std::move(w));
  } catch (const error&) {
    raise(errc::parse_error, "not a permutation: " + s);
  }
}

}  // namespace twistlab
