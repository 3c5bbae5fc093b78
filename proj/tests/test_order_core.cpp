#include "doctest.h"
#include "oracles.hpp"
#include "twistlab/perm.hpp"

using namespace twistlab;

TEST_CASE("coinversions basics") {
  CHECK(coinversions(perm::identity(4)).empty());
  // frozen from the definition: i < j with i appearing after j
  auto c = coinversions(parse_perm("231"));
  std::vector<std::pair<int, int>> want{{1, 2}, {1, 3}};
  CHECK(c == want);
  for (const auto& t : all_perms(4)) CHECK(weak_leq(perm::identity(4), t));
}

TEST_CASE("weak order agrees with brute force and is a lattice on S_4") {
  auto all = all_perms(4);
  for (const auto& a : all)
    for (const auto& b : all) CHECK(weak_leq(a, b) == oracles::weak_leq_brute(a, b));
  CHECK(all.size() == 24);
  for (const auto& a : all)
    for (const auto& b : all) {
      CHECK(oracles::weak_meet_brute(a, b, all).has_value());
      CHECK(oracles::weak_join_brute(a, b, all).has_value());
    }
}

TEST_CASE("weak covers flip one ascent") {
  for (const auto& t : all_perms(4)) {
    auto ups = weak_covers(t);
    for (const auto& u : ups) {
      CHECK(weak_leq(t, u));
      CHECK(coinversion_count(u) == coinversion_count(t) + 1);
    }
    CHECK((int)ups.size() + (int)weak_cocovers(t).size() == 3);
  }
}

TEST_CASE("linear extensions: chain, antichain, brute force") {
  poset chain = poset::chain_of(perm::identity(4));
  auto ext = linear_extensions(chain);
  REQUIRE(ext.size() == 1);
  CHECK(ext[0] == perm::identity(4));

  poset empty = poset::closure_of(3, {});
  CHECK(linear_extensions(empty).size() == 6);

  poset p = poset::closure_of(4, {{2, 1}, {2, 3}, {4, 3}});
  auto got = linear_extensions(p);
  auto want = oracles::lin_ext_brute(4, {{2, 1}, {2, 3}, {4, 3}});
  CHECK(got == want);
  CHECK(std::is_sorted(got.begin(), got.end()));
}

TEST_CASE("poset closure rejects cycles") {
  CHECK_THROWS_AS(poset::closure_of(3, {{1, 2}, {2, 3}, {3, 1}}), error);
}

TEST_CASE("shifted shuffle and convolution displays") {
  auto sh = shifted_shuffle(parse_perm("12"), parse_perm("231"));
  std::vector<perm> shuffle_want;
  for (const char* s : {"12453", "14253", "14523", "14532", "41253", "41523", "41532", "45123",
                        "45132", "45312"})
    shuffle_want.push_back(parse_perm(s));
  std::sort(sh.begin(), sh.end());
  std::sort(shuffle_want.begin(), shuffle_want.end());
  CHECK(sh == shuffle_want);

  auto cv = convolution(parse_perm("12"), parse_perm("231"));
  std::vector<perm> conv_want;
  for (const char* s : {"12453", "13452", "14352", "15342", "23451", "24351", "25341", "34251",
                        "35241", "45231"})
    conv_want.push_back(parse_perm(s));
  std::sort(conv_want.begin(), conv_want.end());
  CHECK(cv == conv_want);
}

TEST_CASE("shuffle/convolution sizes and unit") {
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      if (n + m == 0) continue;
      for (const auto& a : all_perms(n))
        for (const auto& b : all_perms(m)) {
          CHECK((long long)shifted_shuffle(a, b).size() == binomial(n + m, n));
          CHECK((long long)convolution(a, b).size() == binomial(n + m, n));
        }
    }
  perm t = parse_perm("231");
  auto s = shifted_shuffle(t, perm::identity(0));
  REQUIRE(s.size() == 1);
  CHECK(s[0] == t);
}

TEST_CASE("signed shuffle carries signs with values, convolution with positions") {
  // signed operands +1-2 and -2-3+1
  signed_perm a(parse_perm("12"), {{+1, -1}});
  signed_perm b(parse_perm("231"), {{+1, -1, -1}});  // values 1:+,2:-,3:- i.e. word -2-3+1
  auto sh = shifted_shuffle(a, b);
  CHECK(sh.size() == 10);
  for (const auto& s : sh) {
    CHECK(s.signs[0][0] == +1);  // value 1 keeps its sign
    CHECK(s.signs[0][2] == +1);  // value 3 = shifted value 1 of b
    CHECK(s.signs[0][3] == -1);
    CHECK(s.signs[0][4] == -1);
  }
  auto cv = convolution(a, b);
  CHECK(cv.size() == 10);
  for (const auto& s : cv) {
    // position signature must be ++--- everywhere... signs stay at positions:
    // a contributes +- at positions 1,2; b contributes --+ at positions 3,4,5
    std::vector<int8_t> psig(5);
    for (int i = 0; i < 5; ++i) psig[i] = s.signs[0][s.p.at(i) - 1];
    CHECK(psig == std::vector<int8_t>{+1, -1, -1, -1, +1});
  }
}

TEST_CASE("standardize") {
  CHECK(standardize({3, 1, 5, 4, 2}) == parse_perm("31542"));
  CHECK(standardize({35, 54}) == parse_perm("12"));
}
