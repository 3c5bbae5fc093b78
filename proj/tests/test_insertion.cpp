#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "twistlab/insertion.hpp"
#include "twistlab/lattice.hpp"

using namespace twistlab;

TEST_CASE("insert/delete round trip on all (2,4)-twists, all positions") {
  for (const auto& t : enumerate_twists(2, 4, false)) {
    // relabel by 2,4,6,8 so every odd q can be inserted anywhere
    labeled_twist lt{t, {2, 4, 6, 8}};
    for (int q : {1, 3, 5, 7, 9}) {
      labeled_twist ins = pipe_insert(lt, q);
      CHECK(ins.t.n() == 5);
      labeled_twist back = pipe_delete(ins, q);
      CHECK(back.t == t);
      CHECK(back.labels == lt.labels);
    }
  }
}

TEST_CASE("delete/insert round trip on sources of all twists, k <= 3, n <= 5") {
  for (int k = 1; k <= 3; ++k)
    for (int n = 2; n <= 5; ++n) {
      for (const auto& t : enumerate_twists(k, n, false)) {
        contact_graph g = contact_graph::of(t);
        std::set<int> nonsources;
        for (auto [se, wn] : g.arcs) nonsources.insert(wn);
        std::vector<int> labels;
        for (int i = 1; i <= n; ++i) labels.push_back(i);
        labeled_twist lt{t, labels};
        for (int q = 1; q <= n; ++q) {
          if (nonsources.count(q)) {
            CHECK_THROWS_AS(pipe_delete(lt, q), error);
          } else {
            labeled_twist del = pipe_delete(lt, q);
            labeled_twist re = pipe_insert(del, q);
            CHECK(re.t == t);
          }
        }
      }
    }
}

TEST_CASE("inserted pipe is a source and old contact graph is preserved") {
  for (const auto& t : enumerate_twists(2, 3, false)) {
    labeled_twist lt{t, {1, 2, 4}};
    for (int q : {3, 5}) {
      labeled_twist ins = pipe_insert(lt, q);
      contact_graph g = contact_graph::of(ins.t);
      int m = ins.rank_of(q);
      std::vector<std::pair<int, int>> old_arcs;
      for (auto [se, wn] : g.arcs) {
        CHECK(wn != m);  // source: nothing points into the new pipe
        if (se != m && wn != m) {
          auto unshift = [&](int p) { return lt.rank_of(ins.labels[p - 1]); };
          old_arcs.emplace_back(unshift(se), unshift(wn));
        }
      }
      std::sort(old_arcs.begin(), old_arcs.end());
      CHECK(old_arcs == contact_graph::of(t).arcs);
    }
  }
}

TEST_CASE("insertion oracle: unique twist with q a source deleting back") {
  // T |> q must be the unique (k,n+1)-twist with q a source whose deletion gives T
  for (int k = 1; k <= 2; ++k)
    for (int n = 1; n <= 3; ++n) {
      auto candidates = enumerate_twists(k, n + 1, false);
      for (const auto& t : enumerate_twists(k, n, false)) {
        std::vector<int> labels;
        for (int i = 1; i <= n; ++i) labels.push_back(i + (i >= 2 ? 1 : 0));  // 1,3,4,...
        labeled_twist lt{t, labels};
        int q = 2;
        labeled_twist ins = pipe_insert(lt, q);
        int found = 0;
        for (const auto& cand : candidates) {
          labeled_twist lc{cand, ins.labels};
          try {
            labeled_twist del = pipe_delete(lc, q);
            if (del.t == t) {
              ++found;
              CHECK(cand == ins.t);
            }
          } catch (const error&) {
          }
        }
        CHECK(found == 1);
      }
    }
}

TEST_CASE("psi^0 collapses everything, psi^k injective for n <= k+1") {
  for (const auto& t : all_perms(3)) CHECK(insert_permutation(0, t) == build_twist(0, 3, {}));
  for (int k = 2; k <= 3; ++k)
    for (int n = 1; n <= k + 1; ++n) {
      std::set<twist> img;
      for (const auto& t : all_perms(n)) img.insert(insert_permutation(k, t));
      CHECK((long long)img.size() == factorial(n));
    }
}

TEST_CASE("image sizes match the acyclic counts") {
  std::set<twist> img1, img2;
  for (const auto& t : all_perms(3)) img1.insert(insert_permutation(1, t));
  CHECK(img1.size() == 5);
  for (const auto& t : all_perms(4)) img2.insert(insert_permutation(2, t));
  CHECK(img2.size() == 22);
}

TEST_CASE("the permutation is a linear extension of its insertion") {
  for (int k = 1; k <= 2; ++k)
    for (const auto& t : all_perms(4)) {
      contact_graph g = contact_graph::of(insert_permutation(k, t));
      REQUIRE(g.acyclic);
      CHECK(g.closure.is_linear_extension(t));
    }
}

TEST_CASE("fibers are the linear extensions and partition S_n") {
  for (int k = 1; k <= 3; ++k)
    for (int n = 2; n <= 5; ++n) {
      std::map<twist, std::vector<perm>> fibers;
      for (const auto& t : all_perms(n)) fibers[insert_permutation(k, t)].push_back(t);
      long long total = 0;
      for (auto& [tw, members] : fibers) {
        std::sort(members.begin(), members.end());
        CHECK(members == fiber(tw));
        total += (long long)members.size();
      }
      CHECK(total == factorial(n));
      // every acyclic twist is hit (surjectivity onto acyclic twists)
      CHECK(fibers.size() == enumerate_twists(k, n, true).size());
    }
}

TEST_CASE("fiber of a cyclic twist is an error") {
  for (const auto& t : enumerate_twists(2, 4, false))
    if (!is_acyclic(t)) {
      CHECK_THROWS_AS(fiber(t), error);
      break;
    }
}

TEST_CASE("frozen fiber example: k=1, n=3") {
  twist t = insert_permutation(1, parse_perm("132"));
  auto f = fiber(t);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == parse_perm("132"));
  CHECK(f[1] == parse_perm("312"));
}

TEST_CASE("k=1 insertion builds the binary search tree of the reversed word") {
  for (int n = 2; n <= 5; ++n)
    for (const auto& t : all_perms(n)) {
      auto b = oracles::bst::of(t);
      contact_graph g = contact_graph::of(insert_permutation(1, t));
      std::vector<std::pair<int, int>> arcs = g.arcs;
      std::sort(arcs.begin(), arcs.end());
      CHECK(arcs == b.arcs());
    }
}

TEST_CASE("inserting into the empty twist") {
  for (int k = 0; k <= 3; ++k) {
    labeled_twist lt = labeled_twist::empty(k);
    labeled_twist one = pipe_insert(lt, 7);
    CHECK(one.t == build_twist(k, 1, {}));
    CHECK(one.labels == std::vector<int>{7});
  }
}

TEST_CASE("duplicate label rejected") {
  labeled_twist lt{build_twist(1, 1, {}), {4}};
  CHECK_THROWS_AS(pipe_insert(lt, 4), error);
}

TEST_CASE("fiber minima and maxima bound the fiber") {
  for (int k = 1; k <= 2; ++k)
    for (const auto& t : enumerate_twists(k, 4, true)) {
      auto f = fiber(t);
      perm lo = fiber_min(t), hi = fiber_max(t);
      for (const auto& s : f) {
        CHECK(weak_leq(lo, s));
        CHECK(weak_leq(s, hi));
      }
    }
}
