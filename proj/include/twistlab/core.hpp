#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistlab {

enum class errc {
  double_crossing,
  bad_endpoint,
  out_of_shape,
  not_an_elbow,
  boundary_elbow,
  duplicate_label,
  not_a_source,
  cyclic_twist,
  cyclic_input,
  size_mismatch,
  mixed_basis,
  bad_operator_length,
  budget_exceeded,
  parse_error,
  invariant_violation,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::double_crossing: return "DoubleCrossing";
    case errc::bad_endpoint: return "BadEndpoint";
    case errc::out_of_shape: return "OutOfShape";
    case errc::not_an_elbow: return "NotAnElbow";
    case errc::boundary_elbow: return "BoundaryElbow";
    case errc::duplicate_label: return "DuplicateLabel";
    case errc::not_a_source: return "NotASource";
    case errc::cyclic_twist: return "CyclicTwist";
    case errc::cyclic_input: return "CyclicInput";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::mixed_basis: return "MixedBasis";
    case errc::bad_operator_length: return "BadOperatorLength";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::parse_error: return "ParseError";
    case errc::invariant_violation: return "InvariantViolation";
  }
  return "?";
}

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& what) { throw error(c, what); }

// Node budget for enumerations. Default comes from TWISTLAB_BUDGET, else 10^7.
inline long long default_budget() {
  if (const char* env = std::getenv("TWISTLAB_BUDGET")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 10'000'000LL;
}

class budget {
 public:
  explicit budget(long long limit = default_budget()) : left_(limit) {}
  void charge(long long nodes = 1) {
    left_ -= nodes;
    if (left_ < 0) raise(errc::budget_exceeded, "enumeration budget exhausted");
  }

 private:
  long long left_;
};

inline long long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  long long b = 1;
  for (int i = 0; i < r; ++i) b = b * (n - i) / (i + 1);
  return b;
}

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline long long catalan(int m) { return binomial(2 * m, m) / (m + 1); }

// Exact rational arithmetic on 64-bit components (128-bit intermediates).
struct rat {
  long long num = 0;
  long long den = 1;

  rat() = default;
  rat(long long n) : num(n), den(1) {}
  rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) raise(errc::invariant_violation, "rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  static rat from128(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    rat r;
    r.num = static_cast<long long>(n);
    r.den = static_cast<long long>(d);
    return r;
  }

  friend rat operator+(const rat& a, const rat& b) {
    return from128((__int128)a.num * b.den + (__int128)b.num * a.den, (__int128)a.den * b.den);
  }
  friend rat operator-(const rat& a, const rat& b) {
    return from128((__int128)a.num * b.den - (__int128)b.num * a.den, (__int128)a.den * b.den);
  }
  friend rat operator*(const rat& a, const rat& b) {
    return from128((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend rat operator/(const rat& a, const rat& b) {
    if (b.num == 0) raise(errc::invariant_violation, "rational division by zero");
    return from128((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  rat operator-() const { rat r; r.num = -num; r.den = den; return r; }
  friend bool operator==(const rat& a, const rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const rat& a, const rat& b) { return !(a == b); }
  friend bool operator<(const rat& a, const rat& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const rat& a, const rat& b) { return a == b || a < b; }
  friend bool operator>(const rat& a, const rat& b) { return b < a; }
  friend bool operator>=(const rat& a, const rat& b) { return b <= a; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Bitmask helpers for ground sets of size <= 64.
using mask_t = std::uint64_t;
inline mask_t bit(int i) { return mask_t{1} << i; }

}  // namespace twistlab
