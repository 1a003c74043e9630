#include <algorithm>

#include "otsv/errors.hpp"
#include "otsv/social/model.hpp"

namespace otsv::social {

const char* placeholder_tag(Placeholder p) {
  return kPlaceholderTags[static_cast<int>(p)];
}

std::optional<Placeholder> placeholder_from_tag(std::string_view tag) {
  if (tag == "wall") return Placeholder::Wall;
  if (tag == "inbox") return Placeholder::Inbox;
  if (tag == "photos") return Placeholder::Photos;
  return std::nullopt;
}

const std::vector<ContentItem>& items_of(const ProfileState& p, Placeholder place) {
  switch (place) {
    case Placeholder::Wall:
      return p.wall;
    case Placeholder::Inbox:
      return p.inbox;
    case Placeholder::Photos:
      return p.photos;
  }
  return p.wall;
}

std::vector<ContentItem>& items_of(ProfileState& p, Placeholder place) {
  switch (place) {
    case Placeholder::Wall:
      return p.wall;
    case Placeholder::Inbox:
      return p.inbox;
    case Placeholder::Photos:
      return p.photos;
  }
  return p.wall;
}

const ContentItem* find_item(const ProfileState& p, Placeholder place, std::uint64_t uid) {
  for (const ContentItem& item : items_of(p, place))
    if (item.uid == uid) return &item;
  return nullptr;
}

const LikeEntry* find_like(const ProfileState& p, Placeholder place, std::uint64_t uid) {
  for (const LikeEntry& e : p.likes)
    if (e.place == place && e.uid == uid) return &e;
  return nullptr;
}

namespace {

bool sorted_contains(const std::vector<AccountId>& xs, const AccountId& x) {
  return std::binary_search(xs.begin(), xs.end(), x);
}

void sorted_insert(std::vector<AccountId>& xs, const AccountId& x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end() || *it != x) xs.insert(it, x);
}

void sorted_erase(std::vector<AccountId>& xs, const AccountId& x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it != xs.end() && *it == x) xs.erase(it);
}

}  // namespace

ProfileState profile_init(AccountId a, bool default_visibility) {
  ProfileState p;
  p.myid = std::move(a);
  p.visibility = default_visibility;
  return p;
}

bool can_receive_friend_request(const ProfileState& p, const AccountId& from) {
  return from != p.myid && !sorted_contains(p.friends, from) &&
         !sorted_contains(p.pending, from);
}

ProfileState receive_friend_request(ProfileState p, const AccountId& from) {
  sorted_insert(p.pending, from);
  return p;
}

bool can_accept_friend_request(const ProfileState& p, const AccountId& from) {
  return sorted_contains(p.pending, from);
}

ProfileState accept_friend_request(ProfileState p, const AccountId& from) {
  sorted_erase(p.pending, from);
  sorted_insert(p.friends, from);
  return p;
}

bool can_befriend_direct(const ProfileState& p, const AccountId& other) {
  return other != p.myid && !sorted_contains(p.friends, other);
}

ProfileState befriend_direct(ProfileState p, const AccountId& other) {
  sorted_insert(p.friends, other);
  sorted_erase(p.pending, other);
  return p;
}

bool can_receive_content(const ProfileState& p, const ContentItem& item, Placeholder place) {
  return find_item(p, place, item.uid) == nullptr;
}

ProfileState receive_content(ProfileState p, ContentItem item, Placeholder place) {
  LikeEntry entry{place, item.uid, {}};
  auto it = std::lower_bound(p.likes.begin(), p.likes.end(), entry);
  p.likes.insert(it, std::move(entry));
  items_of(p, place).push_back(std::move(item));
  return p;
}

bool can_receive_like(const ProfileState& p, Placeholder place, std::uint64_t uid) {
  return find_item(p, place, uid) != nullptr;
}

ProfileState receive_like(ProfileState p, Placeholder place, std::uint64_t uid,
                          const AccountId& liker) {
  for (LikeEntry& e : p.likes) {
    if (e.place == place && e.uid == uid) {
      sorted_insert(e.likers, liker);
      break;
    }
  }
  return p;
}

bool can_view_photos(const ProfileState& p, const AccountId& viewer) {
  return p.visibility && sorted_contains(p.friends, viewer);
}

ProfileState view_photos(ProfileState p, const AccountId& viewer) {
  for (const ContentItem& photo : p.photos) {
    PhotoView pv{viewer, photo.uid};
    auto it = std::lower_bound(p.photo_views.begin(), p.photo_views.end(), pv);
    if (it == p.photo_views.end() || *it != pv) p.photo_views.insert(it, pv);
  }
  return p;
}

bool can_view_friends(const ProfileState& p, const AccountId& viewer) {
  return p.visibility && sorted_contains(p.friends, viewer);
}

ProfileState view_friends(ProfileState p, const AccountId& viewer) {
  sorted_insert(p.friend_list_views, viewer);
  return p;
}

std::optional<std::string> profile_structural_error(const ProfileState& p) {
  if (p.myid.v.empty()) return "profile has an empty myid";

  for (Placeholder place : {Placeholder::Wall, Placeholder::Inbox, Placeholder::Photos}) {
    const auto& items = items_of(p, place);
    for (size_t i = 0; i < items.size(); ++i)
      for (size_t j = i + 1; j < items.size(); ++j)
        if (items[i].uid == items[j].uid)
          return "duplicate uid " + std::to_string(items[i].uid) + " in " +
                 placeholder_tag(place);
  }

  auto check_sorted = [](const std::vector<AccountId>& xs, const char* what)
      -> std::optional<std::string> {
    for (size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i - 1] < xs[i])) return std::string(what) + " not sorted/deduplicated";
    return std::nullopt;
  };
  if (auto e = check_sorted(p.friends, "friends")) return e;
  if (auto e = check_sorted(p.pending, "pending")) return e;
  if (auto e = check_sorted(p.friend_list_views, "friendListViews")) return e;

  if (sorted_contains(p.friends, p.myid)) return "myid in friends";
  if (sorted_contains(p.pending, p.myid)) return "myid in pending";
  for (const AccountId& a : p.friends)
    if (sorted_contains(p.pending, a)) return "friends and pending intersect at " + a.v;

  for (size_t i = 1; i < p.likes.size(); ++i)
    if (!(p.likes[i - 1].place < p.likes[i].place ||
          (p.likes[i - 1].place == p.likes[i].place && p.likes[i - 1].uid < p.likes[i].uid)))
      return "likes entries not sorted by (place, uid)";
  size_t item_count = p.wall.size() + p.inbox.size() + p.photos.size();
  if (p.likes.size() != item_count)
    return "likes entries (" + std::to_string(p.likes.size()) +
           ") do not cover items one-to-one (" + std::to_string(item_count) + ")";
  for (const LikeEntry& e : p.likes) {
    if (!find_item(p, e.place, e.uid))
      return "likes key (" + std::string(placeholder_tag(e.place)) + ", " +
             std::to_string(e.uid) + ") references no item";
    if (auto err = check_sorted(e.likers, "likers")) return err;
  }

  for (size_t i = 1; i < p.photo_views.size(); ++i)
    if (!(p.photo_views[i - 1] < p.photo_views[i]))
      return "photoViews not sorted/deduplicated";
  for (const PhotoView& pv : p.photo_views)
    if (!find_item(p, Placeholder::Photos, pv.uid))
      return "photoViews references missing photo uid " + std::to_string(pv.uid);

  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Value conversions

const Sort& accountid_sort() {
  static const Sort s = Sort::id("accountid");
  return s;
}

const Sort& payload_sort() {
  static const Sort s = Sort::id("payload");
  return s;
}

const Sort& placeholder_sort() {
  static const Sort s = Sort::enumeration("placeholder", {"wall", "inbox", "photos"});
  return s;
}

const Sort& content_sort() {
  static const Sort s =
      Sort::tuple_of("content", {accountid_sort(), Sort::natural(), payload_sort()});
  return s;
}

Value to_value(const AccountId& a) { return Value::id(a.v); }

Value to_value(Placeholder p) { return Value::enum_tag(placeholder_tag(p)); }

Value to_value(const ContentItem& item) {
  return Value::tuple({Value::id(item.author.v), Value::nat(item.uid),
                       Value::id(item.payload)});
}

AccountId account_from_value(const Value& v) { return AccountId{v.token()}; }

Placeholder placeholder_from_value(const Value& v) {
  auto p = placeholder_from_tag(v.token());
  if (!p) throw ValueError("not a placeholder tag: " + v.display());
  return *p;
}

ContentItem item_from_value(const Value& v) {
  if (v.kind() != Value::Kind::Tuple || v.elems().size() != 3)
    throw ValueError("content item must be a 3-tuple: " + v.display());
  return ContentItem{AccountId{v.elems()[0].token()}, v.elems()[1].as_nat(),
                     v.elems()[2].token()};
}

Bounds make_bounds(std::span<const std::string> account_ids,
                   std::span<const std::uint64_t> uids,
                   std::span<const std::string> payloads) {
  Bounds b;
  std::vector<Value> ids, nats, pays;
  for (const auto& a : account_ids) ids.push_back(Value::id(a));
  for (auto u : uids) nats.push_back(Value::nat(u));
  for (const auto& p : payloads) pays.push_back(Value::id(p));
  b.domain("accountid", std::move(ids));
  b.domain("nat", std::move(nats));
  b.domain("payload", std::move(pays));
  return b;
}

// ---------------------------------------------------------------------------
// ProfileOts

namespace {

Signature make_profile_signature() {
  const Sort& aid = accountid_sort();
  const Sort& ph = placeholder_sort();
  const Sort& content = content_sort();
  Sort aid_set = Sort::set_of(aid);
  Sort content_seq = Sort::seq_of(content);

  Signature sig;
  sig.add_observer({"wall", {}, content_seq})
      .add_observer({"inbox", {}, content_seq})
      .add_observer({"photoalbum", {}, content_seq})
      .add_observer({"friends", {}, aid_set})
      .add_observer({"pending", {}, aid_set})
      .add_observer({"visibility", {}, Sort::boolean()})
      .add_observer({"myid", {}, aid})
      .add_observer({"likeset", {Sort::natural(), ph}, aid_set})
      .add_observer({"viewedphoto", {aid, Sort::natural()}, Sort::boolean()})
      .add_observer({"viewedfriends", {aid}, Sort::boolean()});
  sig.add_transition({"receivefriendrequest", {aid}})
      .add_transition({"acceptfriendrequest", {aid}})
      .add_transition({"befrienddirect", {aid}})
      .add_transition({"receivecontent", {content, ph}})
      .add_transition({"receiveclike", {ph, Sort::natural(), aid}})
      .add_transition({"viewphoto", {aid}})
      .add_transition({"viewfriends", {aid}});
  return sig;
}

Value seq_value(const std::vector<ContentItem>& items) {
  std::vector<Value> vs;
  vs.reserve(items.size());
  for (const ContentItem& it : items) vs.push_back(to_value(it));
  return Value::seq(std::move(vs));
}

Value idset_value(const std::vector<AccountId>& ids) {
  std::vector<Value> vs;
  vs.reserve(ids.size());
  for (const AccountId& a : ids) vs.push_back(Value::id(a.v));
  return Value::set(std::move(vs));
}

// Observer bodies shared between ProfileOts and the lifted network
// observers; idx is the ProfileOts observer index.
Value profile_observe_at(const ProfileState& p, int idx, std::span<const Value> args) {
  switch (idx) {
    case 0:
      return seq_value(p.wall);
    case 1:
      return seq_value(p.inbox);
    case 2:
      return seq_value(p.photos);
    case 3:
      return idset_value(p.friends);
    case 4:
      return idset_value(p.pending);
    case 5:
      return Value::boolean(p.visibility);
    case 6:
      return Value::id(p.myid.v);
    case 7: {  // likeset(uid, place)
      const LikeEntry* e = find_like(p, placeholder_from_value(args[1]), args[0].as_nat());
      return e ? idset_value(e->likers) : Value::set({});
    }
    case 8: {  // viewedphoto(viewer, uid)
      PhotoView pv{AccountId{args[0].token()}, args[1].as_nat()};
      bool hit = std::binary_search(p.photo_views.begin(), p.photo_views.end(), pv);
      return Value::boolean(hit);
    }
    case 9: {  // viewedfriends(viewer)
      AccountId viewer{args[0].token()};
      bool hit = std::binary_search(p.friend_list_views.begin(), p.friend_list_views.end(),
                                   viewer);
      return Value::boolean(hit);
    }
    default:
      throw SignatureError("bad profile observer index");
  }
}

}  // namespace

ProfileOts::ProfileOts(Config cfg) : cfg_(cfg), sig_(make_profile_signature()) {}

ProfileState ProfileOts::initial(std::span<const Value> args) const {
  if (args.size() != 1 || args[0].kind() != Value::Kind::Id)
    throw SignatureError("profile initial takes exactly one accountid argument");
  return profile_init(AccountId{args[0].token()}, cfg_.default_visibility);
}

Value ProfileOts::observe(const State& s, std::string_view obs,
                          std::span<const Value> args) const {
  int idx = sig_.observer_index(obs);
  if (idx < 0) throw SignatureError("unknown observer '" + std::string(obs) + "'");
  return profile_observe_at(s, idx, args);
}

bool ProfileOts::condition(const State& s, std::string_view tr,
                           std::span<const Value> args) const {
  switch (sig_.transition_index(tr)) {
    case 0:
      return can_receive_friend_request(s, account_from_value(args[0]));
    case 1:
      return can_accept_friend_request(s, account_from_value(args[0]));
    case 2:
      return can_befriend_direct(s, account_from_value(args[0]));
    case 3:
      return can_receive_content(s, item_from_value(args[0]),
                                 placeholder_from_value(args[1]));
    case 4:
      return can_receive_like(s, placeholder_from_value(args[0]), args[1].as_nat());
    case 5:
      return can_view_photos(s, account_from_value(args[0]));
    case 6:
      return can_view_friends(s, account_from_value(args[0]));
    default:
      throw SignatureError("unknown transition '" + std::string(tr) + "'");
  }
}

ProfileState ProfileOts::effect(const State& s, std::string_view tr,
                                std::span<const Value> args) const {
  switch (sig_.transition_index(tr)) {
    case 0:
      return receive_friend_request(s, account_from_value(args[0]));
    case 1:
      return accept_friend_request(s, account_from_value(args[0]));
    case 2:
      return befriend_direct(s, account_from_value(args[0]));
    case 3:
      return receive_content(s, item_from_value(args[0]), placeholder_from_value(args[1]));
    case 4:
      return receive_like(s, placeholder_from_value(args[0]), args[1].as_nat(),
                          account_from_value(args[2]));
    case 5:
      return view_photos(s, account_from_value(args[0]));
    case 6:
      return view_friends(s, account_from_value(args[0]));
    default:
      throw SignatureError("unknown transition '" + std::string(tr) + "'");
  }
}

// Shared with network.cpp (internal linkage would hide it; keep a single
// definition through this accessor).
Value detail_profile_observe_at(const ProfileState& p, int idx, std::span<const Value> args) {
  return profile_observe_at(p, idx, args);
}

}  // namespace otsv::social
