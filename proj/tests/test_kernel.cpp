#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

#include "otsv/errors.hpp"
#include "otsv/kernel.hpp"
#include "otsv/social/model.hpp"
#include "otsv/value.hpp"

using namespace otsv;
using namespace otsv::social;

namespace {

Value id(const char* t) { return Value::id(t); }

Bounds tiny_bounds() {
  std::vector<std::string> accs = {"alice", "bob"};
  std::vector<std::uint64_t> uids = {1};
  std::vector<std::string> pays = {"p0"};
  return make_bounds(accs, uids, pays);
}

}  // namespace

TEST_CASE("kernel enforces the stutter law") {
  ProfileOts profile;
  ProfileState s = profile.initial(std::vector<Value>{id("alice")});

  // accepting an absent request: condition false, state unchanged.
  auto r = otsv::apply(profile, s, "acceptfriendrequest", std::vector<Value>{id("bob")});
  CHECK_FALSE(r.applied);
  CHECK(r.state == s);

  // a request from bob is acceptable once received.
  auto r2 = otsv::apply(profile, s, "receivefriendrequest", std::vector<Value>{id("bob")});
  REQUIRE(r2.applied);
  auto r3 =
      otsv::apply(profile, r2.state, "acceptfriendrequest", std::vector<Value>{id("bob")});
  CHECK(r3.applied);

  // a second identical request stutters (already pending).
  auto r4 =
      otsv::apply(profile, r2.state, "receivefriendrequest", std::vector<Value>{id("bob")});
  CHECK_FALSE(r4.applied);
  CHECK(r4.state == r2.state);
}

TEST_CASE("kernel validates calls against the signature") {
  ProfileOts profile;
  ProfileState s = profile.initial(std::vector<Value>{id("alice")});

  CHECK_THROWS_AS(otsv::apply(profile, s, "teleport", std::vector<Value>{}), SignatureError);
  CHECK_THROWS_AS(otsv::apply(profile, s, "receivefriendrequest", std::vector<Value>{}),
                  SignatureError);
  CHECK_THROWS_AS(otsv::apply(profile, s, "receivefriendrequest",
                              std::vector<Value>{id("a"), id("b")}),
                  SignatureError);
  CHECK_THROWS_AS(
      otsv::apply(profile, s, "receivefriendrequest", std::vector<Value>{Value::nat(1)}),
      SignatureError);

  CHECK_THROWS_AS(otsv::observe(profile, s, "age", std::vector<Value>{}), SignatureError);
  CHECK_THROWS_AS(otsv::observe(profile, s, "visibility", std::vector<Value>{id("x")}),
                  SignatureError);
  CHECK(otsv::observe(profile, s, "visibility", std::vector<Value>{}) ==
        Value::boolean(true));
  CHECK(otsv::observe(profile, s, "myid", std::vector<Value>{}) == id("alice"));
}

TEST_CASE("observation plan enumerates every observer sweep") {
  Bounds b = tiny_bounds();
  ProfileOts profile;
  ObservationPlan plan(profile.signature(), b);
  // 7 nullary observers + likeset (1 uid * 3 places) + viewedphoto (2 * 1)
  // + viewedfriends (2) = 14.
  CHECK(plan.total_instances() == 14);
  CHECK(plan.entries().size() == profile.signature().observers().size());

  NetworkOts net;
  ObservationPlan nplan(net.signature(), b);
  // accounts (1) + 7 per-owner observers * 2 + likeset 6 + viewedphoto 4
  // + viewedfriends 4 = 29.
  CHECK(nplan.total_instances() == 29);
}

TEST_CASE("equivalence and digests are bounded by the observation plan") {
  Bounds b = tiny_bounds();
  ProfileOts profile;
  ObservationPlan plan(profile.signature(), b);

  ProfileState s1 = profile.initial(std::vector<Value>{id("alice")});
  s1.photos.push_back({AccountId{"bob"}, 99, "p0"});
  ProfileState s2 = s1;
  s2.photo_views.push_back({AccountId{"bob"}, 99});

  // The view log entry references uid 99, outside the nat domain {1}: no
  // swept observer can see it.
  CHECK_FALSE(s1 == s2);
  CHECK(states_equivalent(profile, s1, s2, plan));
  CHECK(observation_digest(profile, s1, plan) == observation_digest(profile, s2, plan));

  // A difference inside the bounds is observable and changes the digest.
  ProfileState s3 = s1;
  s3.friends.push_back(AccountId{"bob"});
  CHECK_FALSE(states_equivalent(profile, s1, s3, plan));
  CHECK(observation_digest(profile, s1, plan) != observation_digest(profile, s3, plan));

  // digest_hex of a digest has the fixed short form.
  std::string h = digest_hex(observation_digest(profile, s1, plan));
  CHECK(h.size() == 16);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
}

TEST_CASE("composite state keeps components key-sorted") {
  NetworkOts net;
  NetworkState s = net.initial();
  CHECK(s.components.empty());
  CHECK_FALSE(s.has("alice"));

  s.put("carol", std::make_shared<const ProfileState>(profile_init(AccountId{"carol"}, true)));
  s.put("alice", std::make_shared<const ProfileState>(profile_init(AccountId{"alice"}, true)));
  s.put("bob", std::make_shared<const ProfileState>(profile_init(AccountId{"bob"}, true)));
  REQUIRE(s.components.size() == 3);
  CHECK(s.components[0].first == "alice");
  CHECK(s.components[1].first == "bob");
  CHECK(s.components[2].first == "carol");
  REQUIRE(s.find("bob") != nullptr);
  CHECK((*s.find("bob"))->myid.v == "bob");
  CHECK(s.find("dave") == nullptr);

  s.erase("bob");
  CHECK(s.components.size() == 2);
  CHECK(s.find("bob") == nullptr);

  SUBCASE("replacing put overwrites in place") {
    auto p = std::make_shared<const ProfileState>(profile_init(AccountId{"alice"}, false));
    s.put("alice", p);
    CHECK(s.components.size() == 2);
    CHECK((*s.find("alice"))->visibility == false);
  }
}

TEST_CASE("composite equality deep-compares after the pointer fast path") {
  auto pa = std::make_shared<const ProfileState>(profile_init(AccountId{"alice"}, true));
  NetworkState s1, s2;
  s1.data.on_install("alice");
  s2.data.on_install("alice");
  s1.put("alice", pa);
  s2.put("alice", pa);  // shared: pointer fast path
  CHECK(s1 == s2);

  // Equal content behind distinct pointers still compares equal.
  s2.put("alice", std::make_shared<const ProfileState>(profile_init(AccountId{"alice"}, true)));
  CHECK(s1 == s2);

  // Differing content does not.
  auto changed = profile_init(AccountId{"alice"}, true);
  changed.visibility = false;
  s2.put("alice", std::make_shared<const ProfileState>(changed));
  CHECK_FALSE(s1 == s2);

  // Differing installed sets do not, even with equal components.
  NetworkState s3 = s1;
  s3.data.on_install("bob");
  CHECK_FALSE(s1 == s3);
}

TEST_CASE("install and remove guard against duplicates and absences") {
  NetworkOts net;
  NetworkState s = net.initial();
  auto fresh = [](std::string_view a) { return profile_init(AccountId{std::string(a)}, true); };

  s = install_component(std::move(s), "alice", fresh);
  CHECK(s.has("alice"));
  CHECK(s.data.contains("alice"));
  CHECK_THROWS_AS(install_component(s, "alice", fresh), Error);
  CHECK_THROWS_AS(remove_component(s, "bob"), Error);

  NetworkState t = remove_component(s, "alice");
  CHECK_FALSE(t.has("alice"));
  CHECK_FALSE(t.data.contains("alice"));
}

TEST_CASE("projection totalizes uninstalled components") {
  NetworkOts net;
  NetworkState s = net.initial();
  auto p = net.project(s, AccountId{"ghost"});
  REQUIRE(p != nullptr);
  CHECK(p->myid.v == "ghost");
  CHECK(p->visibility == true);
  CHECK(p->wall.empty());
  CHECK(p->friends.empty());

  NetworkOts hidden(NetworkOts::Config{.default_visibility = false});
  auto q = hidden.project(hidden.initial(), AccountId{"ghost"});
  CHECK(q->visibility == false);

  // An installed component projects as stored (same shared pointer).
  s = install_component(std::move(s), "alice", [](std::string_view a) {
    return profile_init(AccountId{std::string(a)}, true);
  });
  auto stored = *s.find("alice");
  CHECK(net.project(s, AccountId{"alice"}).get() == stored.get());
}
