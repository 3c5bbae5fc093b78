#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "twistlab/cambrian.hpp"
#include "twistlab/hopf.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/orientation.hpp"
#include "twistlab/schroder.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

using json = nlohmann::json;

// Twist schema: {"elbows":[[r,c],...], "k":int, "n":int, "signature": "+-"?}
// with elbows sorted lexicographically.  nlohmann objects order their keys,
// so equal twists serialize to equal bytes.
inline json to_json(const twist& t) {
  json j;
  j["k"] = t.k();
  j["n"] = t.n();
  if (!t.sh().classical()) j["signature"] = sig_str(t.sh().sig);
  json elbows = json::array();
  std::vector<std::pair<int, int>> boxes;
  for (auto id : t.elbows()) boxes.emplace_back(t.sh().row_of(id), t.sh().col_of(id));
  std::sort(boxes.begin(), boxes.end());
  for (auto [r, c] : boxes) elbows.push_back(json::array({r, c}));
  j["elbows"] = std::move(elbows);
  return j;
}

inline twist twist_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("n") || !j.contains("elbows"))
    raise(errc::parse_error, "twist object needs k, n and elbows");
  int k = j.at("k").get<int>(), n = j.at("n").get<int>();
  if (k < 0 || n < 0) raise(errc::parse_error, "k and n must be non-negative");
  signature sig = minus_signature(n);
  if (j.contains("signature")) {
    sig = parse_signature(j.at("signature").get<std::string>());
    if ((int)sig.size() != n) raise(errc::parse_error, "signature length != n");
  }
  auto sh = shape::make(k, sig);
  std::vector<uint16_t> ids;
  for (const auto& e : j.at("elbows")) {
    if (!e.is_array() || e.size() != 2) raise(errc::parse_error, "elbow must be [row, col]");
    int r = e[0].get<int>(), c = e[1].get<int>();
    if (!sh->in_shape(r, c) || sh->forced_elbow(sh->idx(r, c)))
      raise(errc::invariant_violation,
            "elbow (" + std::to_string(r) + "," + std::to_string(c) + ") not an interior box");
    ids.push_back((uint16_t)sh->idx(r, c));
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    raise(errc::invariant_violation, "repeated elbow box");
  twist t(sh, std::move(ids));
  try {
    trace(t);
  } catch (const error& e) {
    raise(errc::invariant_violation, std::string("invalid twist: ") + e.what());
  }
  return t;
}

inline json to_json(const orientation& o) {
  json j;
  j["k"] = o.k;
  j["n"] = o.n;
  json arcs = json::array();
  for (auto [a, b] : o.arcs()) arcs.push_back(json::array({a, b}));
  j["arcs"] = std::move(arcs);
  return j;
}

inline orientation orientation_from_json(const json& j) {
  orientation o(j.at("k").get<int>(), j.at("n").get<int>());
  for (const auto& e : j.at("arcs")) {
    int a = e[0].get<int>(), b = e[1].get<int>();
    int lo = std::min(a, b), hi = std::max(a, b);
    if (lo < 1 || hi > o.n || hi - lo > o.k) raise(errc::parse_error, "arc outside the graph");
    if (o.get(lo, hi) != 0) raise(errc::invariant_violation, "edge oriented twice");
    o.set(lo, hi, a < b ? +1 : -1);
  }
  if (!o.acyclic()) raise(errc::invariant_violation, "orientation has a directed cycle");
  return o;
}

inline json to_json(const hyper_twist& h) {
  json j;
  j["k"] = h.k();
  j["n"] = h.n();
  json parts = json::array();
  for (const auto& p : h.parts) parts.push_back(p);
  j["parts"] = std::move(parts);
  json elbows = json::array();
  std::vector<std::pair<int, int>> boxes;
  for (auto id : h.elbows) boxes.emplace_back(h.sh->row_of(id), h.sh->col_of(id));
  std::sort(boxes.begin(), boxes.end());
  for (auto [r, c] : boxes) elbows.push_back(json::array({r, c}));
  j["elbows"] = std::move(elbows);
  return j;
}

template <typename Elem, typename KeyFn>
json lattice_to_json(const std::vector<Elem>& elems, const finite_lattice& order, KeyFn key) {
  json j;
  json nodes = json::array();
  for (const auto& e : elems) nodes.push_back(key(e));
  j["elements"] = std::move(nodes);
  json covers = json::array();
  for (int a = 0; a < order.size; ++a)
    for (int b : order.up_covers[a]) covers.push_back(json::array({a, b}));
  j["covers"] = std::move(covers);
  return j;
}

template <typename Elem, typename KeyFn>
std::string lattice_to_dot(const std::vector<Elem>& elems, const finite_lattice& order,
                           KeyFn key) {
  std::string out = "digraph lattice {\n  rankdir=BT;\n";
  for (size_t i = 0; i < elems.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + key(elems[i]) + "\"];\n";
  for (int a = 0; a < order.size; ++a)
    for (int b : order.up_covers[a])
      out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

// Compact text keys used in DOT labels and formal sum rendering.
inline std::string key_of(const perm& p) { return p.str(); }
inline std::string key_of(const twist& t) {
  std::string s;
  std::vector<std::pair<int, int>> boxes;
  for (auto id : t.elbows()) boxes.emplace_back(t.sh().row_of(id), t.sh().col_of(id));
  std::sort(boxes.begin(), boxes.end());
  for (auto [r, c] : boxes) {
    if (!s.empty()) s += ' ';
    s += std::to_string(r) + "," + std::to_string(c);
  }
  return "T" + std::to_string(t.n()) + "{" + s + "}";
}
inline std::string key_of(const orientation& o) {
  return "G" + std::to_string(o.n) + "{" + o.str() + "}";
}
inline std::string key_of(const ordered_partition& p) { return p.str(); }
inline std::string key_of(const hyper_twist& h) { return h.str(); }
template <typename A, typename B>
std::string key_of(const std::pair<A, B>& p) {
  return key_of(p.first) + " (x) " + key_of(p.second);
}

// Formal sums serialize as arrays of [key, coefficient] pairs in key order.
inline json to_json(const formal_sum<perm>& s) {
  json j = json::array();
  for (auto& [p, c] : s.terms) j.push_back(json::array({p.str(), c}));
  return j;
}

inline formal_sum<perm> perm_sum_from_json(const json& j) {
  formal_sum<perm> s;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) raise(errc::parse_error, "term must be [key, coeff]");
    s.add(parse_perm(term[0].get<std::string>()), term[1].get<long long>());
  }
  return s;
}

inline json to_json(const formal_sum<twist>& s) {
  json j = json::array();
  for (auto& [t, c] : s.terms) j.push_back(json::array({to_json(t), c}));
  return j;
}

inline formal_sum<twist> twist_sum_from_json(const json& j) {
  formal_sum<twist> s;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) raise(errc::parse_error, "term must be [key, coeff]");
    s.add(twist_from_json(term[0]), term[1].get<long long>());
  }
  return s;
}

inline json to_json(const formal_sum<ordered_partition>& s) {
  json j = json::array();
  for (auto& [p, c] : s.terms) j.push_back(json::array({p.str(), c}));
  return j;
}

template <typename K>
std::string render(const formal_sum<K>& s, const std::string& basis) {
  if (s.terms.empty()) return "0";
  std::string out;
  for (auto& [k, c] : s.terms) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c) + "*";
    out += basis + "[" + key_of(k) + "]";
  }
  return out;
}

}  // namespace twistlab
