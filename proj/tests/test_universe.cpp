#include <doctest.h>

#include <limits>
#include <set>
#include <string>
#include <vector>

#include "otsv/errors.hpp"
#include "otsv/social/model.hpp"
#include "otsv/verify/universe.hpp"
#include "support/oracle.hpp"

using namespace otsv;
using namespace otsv::social;
using namespace otsv::verify;

namespace {

Bounds mk_bounds(std::vector<std::string> accounts, std::vector<std::uint64_t> uids,
                 std::vector<std::string> payloads) {
  return make_bounds(accounts, uids, payloads);
}

std::set<std::string> drain_renders(UniverseEnumerator& uni) {
  std::set<std::string> renders;
  NetworkState s;
  std::uint64_t n = 0;
  while (uni.next(s)) {
    ++n;
    REQUIRE(network_structural_error(s) == std::nullopt);
    renders.insert(oracle::render(s));
  }
  REQUIRE(n == uni.size());           // stream length matches the count
  REQUIRE(renders.size() == n);       // and every state is distinct
  return renders;
}

}  // namespace

TEST_CASE("profile state counts match the enumerator and the oracle") {
  struct Case {
    const char* name;
    Bounds b;
    std::uint64_t expect;
  };
  // Counting scheme per owner: content skeletons x liker subsets x photo-view
  // subsets x friends/pending pairs x friend-list-view subsets x visibility.
  std::vector<Case> cases;
  {
    // 1 account, 1 uid, 1 payload, caps seq=1 set=2 content=1. Liker subsets
    // S = 2. content: empty 1, wall item 1*S = 2, inbox 2, photo item
    // 1*S*V(1) = 2*2 = 4; total 9. FP = 1, flv = 2, vis = 2 -> 9*1*2*2 = 36.
    cases.push_back({"single account", mk_bounds({"alice"}, {1}, {"p0"}), 36});
  }
  {
    // 2 accounts, 1 uid: S = 1+2+1 = 4 subsets, seq(1) = 2 items,
    // content = 1 + 2*4 + 2*4 + 2*4*4 = 49; FP = 3; 49*3*4*2 = 1176.
    cases.push_back({"two accounts", mk_bounds({"alice", "bob"}, {1}, {"p0"}), 1176});
  }
  {
    // max_set = 1 shrinks every subset factor to (n choose 0)+(n choose 1).
    // content = 1 + 6 + 6 + 2*3*3 = 31; FP = 3; 31*3*3*2 = 558.
    Bounds b = mk_bounds({"alice", "bob"}, {1}, {"p0"});
    b.caps.max_set = 1;
    cases.push_back({"max_set 1", b, 558});
  }
  {
    // max_content = 0 leaves only the empty skeleton: FP(3 accounts) = 9,
    // flv subsets = 7, vis = 2 -> 126.
    Bounds b = mk_bounds({"alice", "bob", "carol"}, {1}, {"p0"});
    b.caps.max_content = 0;
    cases.push_back({"no content", b, 126});
  }
  {
    // Longer sequences: 1 account, 2 uids, caps seq=2 set=1 content=2.
    // seq(l): 1, 2, 2 (distinct uids); S = 2; V(1) = 2, V(2) = 3.
    // content = 1 + 4+4+8 + 8+8+24 + 16+32+32 = 137; 137*1*2*2 = 548.
    Bounds b = mk_bounds({"alice"}, {1, 2}, {"p0"});
    b.caps.max_seq = 2;
    b.caps.max_set = 1;
    b.caps.max_content = 2;
    cases.push_back({"seq length 2", b, 548});
  }

  for (const Case& c : cases) {
    CAPTURE(c.name);
    CHECK(count_profile_states(c.b) == c.expect);
    auto enumerated = enumerate_profile_states("alice", c.b);
    REQUIRE(enumerated.size() == c.expect);

    std::set<std::string> renders;
    for (const auto& p : enumerated) {
      REQUIRE(profile_structural_error(*p) == std::nullopt);
      REQUIRE(within_caps(*p, c.b.caps));
      CHECK(p->myid.v == "alice");
      renders.insert(oracle::render(*p));
    }
    REQUIRE(renders.size() == c.expect);  // pairwise distinct
    // the independent generate-and-reject oracle produces the same set
    CHECK(renders == oracle::profile_states("alice", c.b));
  }
}

TEST_CASE("universe counts: closed form vs oracle product") {
  SUBCASE("one account") {
    Bounds b = mk_bounds({"alice"}, {1}, {"p0"});
    // empty network + 36 single-profile states
    CHECK(count_universe(b) == 37);
    CHECK(oracle::count_universe(b) == 37);
  }
  SUBCASE("two accounts, two uids, default caps") {
    Bounds b = mk_bounds({"alice", "bob"}, {1, 2}, {"p0"});
    // per profile: content = 1 + 16 + 16 + 64 = 97; 97*3*4*2 = 2328;
    // universe = 1 + 2*2328 + 2328^2 = 5424241.
    CHECK(count_profile_states(b) == 2328);
    CHECK(count_universe(b) == 5'424'241);
    CHECK(oracle::count_universe(b) == 5'424'241);
  }
  SUBCASE("two accounts, one uid, default caps") {
    Bounds b = mk_bounds({"alice", "bob"}, {1}, {"p0"});
    // 1 + 2*1176 + 1176^2
    CHECK(count_universe(b) == 1'385'329);
    CHECK(oracle::count_universe(b) == 1'385'329);
  }
  SUBCASE("max_accounts truncates the subset sum") {
    Bounds b = mk_bounds({"alice", "bob"}, {1}, {"p0"});
    b.caps.max_accounts = 1;
    CHECK(count_universe(b) == 1 + 2 * 1176);
    CHECK(oracle::count_universe(b) == 1 + 2 * 1176);
    b.caps.max_content = 0;
    // empty-content profiles: 3*4*2 = 24 each -> 1 + 2*24 = 49
    CHECK(count_universe(b) == 49);
    b.caps.max_accounts = 0;
    CHECK(count_universe(b) == 1);
  }
  SUBCASE("content=0 set=1 grid") {
    Bounds b = mk_bounds({"alice", "bob"}, {1}, {"p0"});
    b.caps.max_content = 0;
    b.caps.max_set = 1;
    // per profile 1*3*3*2 = 18; universe = 1 + 2*18 + 18^2 = 361
    CHECK(count_universe(b) == 361);
    CHECK(oracle::count_universe(b) == 361);
  }
}

TEST_CASE("universe enumeration streams each state exactly once") {
  SUBCASE("single account") {
    Bounds b = mk_bounds({"alice"}, {1}, {"p0"});
    UniverseEnumerator uni(b);
    REQUIRE(uni.size() == 37);
    auto renders = drain_renders(uni);
    CHECK(renders == oracle::universe_states(b));
  }
  SUBCASE("two accounts with max_set=1 and max_accounts=1") {
    Bounds b = mk_bounds({"alice", "bob"}, {1}, {"p0"});
    b.caps.max_set = 1;
    b.caps.max_accounts = 1;
    UniverseEnumerator uni(b);
    REQUIRE(uni.size() == 1 + 2 * 558);
    auto renders = drain_renders(uni);
    CHECK(renders == oracle::universe_states(b));
  }
  SUBCASE("longer sequences") {
    Bounds b = mk_bounds({"alice"}, {1, 2}, {"p0"});
    b.caps.max_seq = 2;
    b.caps.max_set = 1;
    b.caps.max_content = 2;
    UniverseEnumerator uni(b);
    REQUIRE(uni.size() == 549);
    auto renders = drain_renders(uni);
    CHECK(renders == oracle::universe_states(b));
  }
  SUBCASE("the empty network comes first, then singletons") {
    Bounds b = mk_bounds({"alice", "bob"}, {1}, {"p0"});
    UniverseEnumerator uni(b);
    NetworkState s;
    REQUIRE(uni.next(s));
    CHECK(s.components.empty());
    REQUIRE(uni.next(s));
    REQUIRE(s.components.size() == 1);
    CHECK(s.components[0].first == "alice");
    // the first profile in enumeration order: everything empty, hidden
    CHECK(s.components[0].second->visibility == false);
    CHECK(s.components[0].second->wall.empty());
    CHECK(s.components[0].second->friends.empty());
  }
  SUBCASE("reset replays the same stream") {
    Bounds b = mk_bounds({"alice"}, {1}, {"p0"});
    UniverseEnumerator uni(b);
    auto first = drain_renders(uni);
    NetworkState s;
    CHECK_FALSE(uni.next(s));  // exhausted stays exhausted
    uni.reset();
    auto second = drain_renders(uni);
    CHECK(first == second);
  }
  SUBCASE("max_accounts=0 yields only the empty network") {
    Bounds b = mk_bounds({"alice", "bob"}, {1}, {"p0"});
    b.caps.max_accounts = 0;
    UniverseEnumerator uni(b);
    REQUIRE(uni.size() == 1);
    NetworkState s;
    REQUIRE(uni.next(s));
    CHECK(s.components.empty());
    CHECK_FALSE(uni.next(s));
  }
}

TEST_CASE("universe enumeration refuses oversized requests") {
  SUBCASE("total above the limit") {
    Bounds b = mk_bounds({"alice", "bob"}, {1, 2}, {"p0"});
    try {
      UniverseEnumerator uni(b, 100);
      FAIL("expected UniverseRefused");
    } catch (const UniverseRefused& e) {
      CHECK(e.estimate() == 5'424'241);
      CHECK(std::string(e.what()).find("above the configured limit") != std::string::npos);
    }
  }
  SUBCASE("a generous limit admits the same bounds") {
    Bounds b = mk_bounds({"alice", "bob"}, {1, 2}, {"p0"});
    UniverseEnumerator uni(b, 6'000'000);
    CHECK(uni.size() == 5'424'241);
  }
  SUBCASE("per-owner materialization guard") {
    // 4 accounts x 3 uids x 2 payloads with caps seq=2 set=2 content=2 put a
    // single owner's list in the billions; even an unlimited total refuses.
    Bounds b = mk_bounds({"a", "b", "c", "d"}, {1, 2, 3}, {"p0", "p1"});
    b.caps.max_seq = 2;
    b.caps.max_set = 2;
    b.caps.max_content = 2;
    try {
      UniverseEnumerator uni(b, std::numeric_limits<std::uint64_t>::max());
      FAIL("expected UniverseRefused");
    } catch (const UniverseRefused& e) {
      CHECK(std::string(e.what()).find("materialization limit") != std::string::npos);
    }
  }
}
