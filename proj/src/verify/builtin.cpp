#include "otsv/verify/builtin.hpp"

#include <algorithm>
#include <vector>

#include "otsv/errors.hpp"
#include "otsv/lang/parser.hpp"
#include "otsv/social/model.hpp"

namespace otsv::verify {
namespace {

using namespace lang;
using social::AccountId;
using social::NetworkState;
using social::PhotoView;
using social::ProfileState;

constexpr std::string_view kText =
    R"(-- Stock privacy properties. inv1: someone appears in a profile's photo
-- view log only if the profile is visible and lists the viewer as a friend.
-- inv2: the same for the friend-list view log. L1: installed accounts
-- report their own id.

invariant inv1(a1: accountid, a2: accountid, pi: nat) :=
  (not visibility(a1) or not (a2 in friends(a1))) implies not viewed-photo(a1, a2, pi)

invariant inv2(a1: accountid, a2: accountid) :=
  (not visibility(a1) or not (a2 in friends(a1))) implies not viewed-friends(a1, a2)

lemma L1(a: accountid) :=
  a in accounts implies myid(a) == a
)";

PredPtr guard_implies(PredPtr consequent) {
  Atom vis{AtomKind::Visibility, {param_ref("a1")}, {}};
  Atom fr{AtomKind::InFriends, {param_ref("a2"), param_ref("a1")}, {}};
  return p_implies(p_or(p_not(p_atom(std::move(vis))), p_not(p_atom(std::move(fr)))),
                   std::move(consequent));
}

PredPtr inv1_body() {
  Atom vp{AtomKind::ViewedPhoto, {param_ref("a1"), param_ref("a2"), param_ref("pi")}, {}};
  return guard_implies(p_not(p_atom(std::move(vp))));
}

PredPtr inv2_body() {
  Atom vf{AtomKind::ViewedFriends, {param_ref("a1"), param_ref("a2")}, {}};
  return guard_implies(p_not(p_atom(std::move(vf))));
}

PredPtr l1_body() {
  Atom in{AtomKind::InAccounts, {param_ref("a")}, {}};
  Atom my{AtomKind::MyidEq, {param_ref("a"), param_ref("a")}, {}};
  return p_implies(p_atom(std::move(in)), p_atom(std::move(my)));
}

bool inv1_native(const NetworkState& s, std::span<const Value> x, bool) {
  const auto* found = s.find(x[0].token());
  if (!found) return true;  // fresh profile: empty view log
  const ProfileState& p = **found;
  if (p.visibility &&
      std::binary_search(p.friends.begin(), p.friends.end(), AccountId{x[1].token()}))
    return true;
  PhotoView pv{AccountId{x[1].token()}, x[2].as_nat()};
  return !std::binary_search(p.photo_views.begin(), p.photo_views.end(), pv);
}

bool inv2_native(const NetworkState& s, std::span<const Value> x, bool) {
  const auto* found = s.find(x[0].token());
  if (!found) return true;
  const ProfileState& p = **found;
  if (p.visibility &&
      std::binary_search(p.friends.begin(), p.friends.end(), AccountId{x[1].token()}))
    return true;
  return !std::binary_search(p.friend_list_views.begin(), p.friend_list_views.end(),
                             AccountId{x[1].token()});
}

bool l1_native(const NetworkState& s, std::span<const Value> x, bool) {
  const auto* found = s.find(x[0].token());
  return !found || (*found)->myid.v == x[0].token();
}

const std::vector<InvariantDef>& storage() {
  static const std::vector<InvariantDef> defs = [] {
    const Sort& aid = social::accountid_sort();
    std::vector<InvariantDef> v;
    v.push_back({"inv1",
                 {{"a1", aid}, {"a2", aid}, {"pi", Sort::natural()}},
                 inv1_body(),
                 false,
                 inv1_native});
    v.push_back({"inv2", {{"a1", aid}, {"a2", aid}}, inv2_body(), false, inv2_native});
    v.push_back({"L1", {{"a", aid}}, l1_body(), true, l1_native});
    return v;
  }();
  return defs;
}

}  // namespace

std::span<const InvariantDef> builtin_definitions() { return storage(); }

std::string_view builtin_text() { return kText; }

void ensure_builtin_consistency() {
  const std::vector<InvariantDef> parsed = parse_invariant_file(kText);
  const auto compiled = builtin_definitions();
  if (parsed.size() != compiled.size())
    throw ConfigError("bundled invariant text defines " + std::to_string(parsed.size()) +
                      " entries, expected " + std::to_string(compiled.size()));
  for (std::size_t i = 0; i < compiled.size(); ++i) {
    const InvariantDef& c = compiled[i];
    const InvariantDef& p = parsed[i];
    if (c.name != p.name || c.is_lemma != p.is_lemma || !(c.params == p.params) ||
        !pred_equal(c.body, p.body))
      throw ConfigError("built-in definition '" + c.name +
                        "' disagrees with its bundled text form");
  }
}

}  // namespace otsv::verify
