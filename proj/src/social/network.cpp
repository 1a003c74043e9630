#include <algorithm>

#include "otsv/errors.hpp"
#include "otsv/social/model.hpp"

namespace otsv::social {

bool InstalledSet::contains(std::string_view id) const {
  return std::binary_search(ids.begin(), ids.end(), id,
                            [](std::string_view a, std::string_view b) { return a < b; });
}

void InstalledSet::on_install(const std::string& id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it != ids.end() && *it == id) throw Error("account '" + id + "' already installed");
  ids.insert(it, id);
}

void InstalledSet::on_remove(std::string_view id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == ids.end() || *it != id)
    throw Error("account '" + std::string(id) + "' not installed");
  ids.erase(it);
}

std::optional<std::string> network_structural_error(const NetworkState& s) {
  for (size_t i = 1; i < s.data.ids.size(); ++i)
    if (!(s.data.ids[i - 1] < s.data.ids[i])) return "installed set not sorted/deduplicated";
  if (s.data.ids.size() != s.components.size())
    return "installed set and component map sizes differ";
  for (size_t i = 0; i < s.components.size(); ++i) {
    const auto& [key, profile] = s.components[i];
    if (key != s.data.ids[i])
      return "component key '" + key + "' does not match installed id '" + s.data.ids[i] + "'";
    if (!profile) return "component '" + key + "' is null";
    if (profile->myid.v != key)
      return "component '" + key + "' has myid '" + profile->myid.v + "'";
    if (auto err = profile_structural_error(*profile))
      return "profile '" + key + "': " + *err;
  }
  return std::nullopt;
}

bool within_caps(const ProfileState& p, const StructuralCaps& caps) {
  if (p.wall.size() > caps.max_seq || p.inbox.size() > caps.max_seq ||
      p.photos.size() > caps.max_seq)
    return false;
  if (p.wall.size() + p.inbox.size() + p.photos.size() > caps.max_content) return false;
  if (p.friends.size() > caps.max_set || p.pending.size() > caps.max_set ||
      p.photo_views.size() > caps.max_set || p.friend_list_views.size() > caps.max_set)
    return false;
  for (const LikeEntry& e : p.likes)
    if (e.likers.size() > caps.max_set) return false;
  return true;
}

bool within_caps(const NetworkState& s, const StructuralCaps& caps) {
  if (s.components.size() > caps.max_accounts) return false;
  for (const auto& [key, profile] : s.components)
    if (!within_caps(*profile, caps)) return false;
  return true;
}

void structural_key_append(std::string& out, const ProfileState& p) {
  auto append_tok = [&out](const std::string& tok) {
    out += std::to_string(tok.size());
    out += ':';
    out += tok;
  };
  auto append_items = [&](const std::vector<ContentItem>& items) {
    out += std::to_string(items.size());
    out += '[';
    for (const ContentItem& it : items) {
      append_tok(it.author.v);
      out += ',';
      out += std::to_string(it.uid);
      out += ',';
      append_tok(it.payload);
      out += ';';
    }
    out += ']';
  };
  auto append_ids = [&](const std::vector<AccountId>& ids) {
    out += std::to_string(ids.size());
    out += '{';
    for (const AccountId& a : ids) {
      append_tok(a.v);
      out += ';';
    }
    out += '}';
  };

  out += p.visibility ? "v1" : "v0";
  out += 'w';
  append_items(p.wall);
  out += 'i';
  append_items(p.inbox);
  out += 'p';
  append_items(p.photos);
  out += 'L';
  out += std::to_string(p.likes.size());
  out += '[';
  for (const LikeEntry& e : p.likes) {
    out += std::to_string(static_cast<int>(e.place));
    out += ',';
    out += std::to_string(e.uid);
    out += ':';
    append_ids(e.likers);
  }
  out += ']';
  out += 'f';
  append_ids(p.friends);
  out += 'q';
  append_ids(p.pending);
  out += 'V';
  out += std::to_string(p.photo_views.size());
  out += '[';
  for (const PhotoView& pv : p.photo_views) {
    append_tok(pv.viewer.v);
    out += ',';
    out += std::to_string(pv.uid);
    out += ';';
  }
  out += ']';
  out += 'F';
  append_ids(p.friend_list_views);
}

std::string structural_key(const NetworkState& s) {
  std::string out;
  out.reserve(64 + 96 * s.components.size());
  out += 'N';
  out += std::to_string(s.components.size());
  for (const auto& [key, profile] : s.components) {
    out += '|';
    out += std::to_string(key.size());
    out += ':';
    out += key;
    out += '=';
    structural_key_append(out, *profile);
  }
  return out;
}

// ---------------------------------------------------------------------------
// NetworkOts

namespace {

Signature make_network_signature(bool set_visibility_extension) {
  const Sort& aid = accountid_sort();
  const Sort& ph = placeholder_sort();
  const Sort& content = content_sort();
  Sort aid_set = Sort::set_of(aid);
  Sort content_seq = Sort::seq_of(content);

  Signature sig;
  sig.add_observer({"accounts", {}, aid_set})
      .add_observer({"wall", {aid}, content_seq})
      .add_observer({"inbox", {aid}, content_seq})
      .add_observer({"photoalbum", {aid}, content_seq})
      .add_observer({"friends", {aid}, aid_set})
      .add_observer({"pending", {aid}, aid_set})
      .add_observer({"visibility", {aid}, Sort::boolean()})
      .add_observer({"myid", {aid}, aid})
      .add_observer({"likeset", {aid, Sort::natural(), ph}, aid_set})
      .add_observer({"viewedphoto", {aid, aid, Sort::natural()}, Sort::boolean()})
      .add_observer({"viewedfriends", {aid, aid}, Sort::boolean()});
  sig.add_transition({"add", {aid}})
      .add_transition({"del", {aid}})
      .add_transition({"receivefriendSN", {aid, aid}})
      .add_transition({"acceptfriendSN", {aid, aid}})
      .add_transition({"receiveSN", {aid, content, aid, ph}})
      .add_transition({"receivelikeSN", {aid, ph, Sort::natural(), aid}})
      .add_transition({"viewphotoSN", {aid, aid}})
      .add_transition({"viewfriendsSN", {aid, aid}});
  if (set_visibility_extension) sig.add_transition({"setvisibility", {aid, Sort::boolean()}});
  return sig;
}

// Clone-on-write update of a single component.
template <typename F>
NetworkState with_profile(NetworkState s, const AccountId& a, F&& update) {
  const auto* found = s.find(a.v);
  ProfileState next = update(**found);
  s.put(a.v, std::make_shared<const ProfileState>(std::move(next)));
  return s;
}

}  // namespace

NetworkOts::NetworkOts(Config cfg)
    : cfg_(cfg),
      component_(ProfileOts::Config{cfg.default_visibility}),
      sig_(make_network_signature(cfg.set_visibility_extension)) {}

NetworkState NetworkOts::initial(std::span<const Value> args) const {
  if (!args.empty()) throw SignatureError("network initial takes no arguments");
  return NetworkState{};
}

std::shared_ptr<const ProfileState> NetworkOts::project(const State& s,
                                                        const AccountId& a) const {
  if (const auto* found = s.find(a.v)) return *found;
  return std::make_shared<const ProfileState>(profile_init(a, cfg_.default_visibility));
}

Value NetworkOts::observe_at(const State& s, int idx, std::span<const Value> args) const {
  if (idx == 0) {
    std::vector<Value> ids;
    ids.reserve(s.data.ids.size());
    for (const std::string& id : s.data.ids) ids.push_back(Value::id(id));
    return Value::set(std::move(ids));
  }
  // Lifted profile observer: leading owner argument, then the component
  // observer's own arguments, evaluated on the projected component.
  AccountId owner{args[0].token()};
  auto p = project(s, owner);
  return detail_profile_observe_at(*p, idx - 1, args.subspan(1));
}

Value NetworkOts::observe(const State& s, std::string_view obs,
                          std::span<const Value> args) const {
  int idx = sig_.observer_index(obs);
  if (idx < 0) throw SignatureError("unknown observer '" + std::string(obs) + "'");
  return observe_at(s, idx, args);
}

TrInstance NetworkOts::decode(std::string_view tr, std::span<const Value> args) const {
  int idx = sig_.transition_index(tr);
  if (idx < 0) {
    if (tr == "setvisibility" && !cfg_.set_visibility_extension)
      throw ConfigError("transition 'setvisibility' requires the set-visibility extension");
    throw SignatureError("unknown transition '" + std::string(tr) + "'");
  }
  sig_.check_call(sig_.transition_at(idx), args);
  TrInstance t;
  switch (idx) {
    case 0:
      t.tr = Tr::Add;
      t.a1 = account_from_value(args[0]);
      break;
    case 1:
      t.tr = Tr::Del;
      t.a1 = account_from_value(args[0]);
      break;
    case 2:
      t.tr = Tr::ReceiveFriend;
      t.a1 = account_from_value(args[0]);
      t.a2 = account_from_value(args[1]);
      break;
    case 3:
      t.tr = Tr::AcceptFriend;
      t.a1 = account_from_value(args[0]);
      t.a2 = account_from_value(args[1]);
      break;
    case 4:
      t.tr = Tr::Receive;
      t.a1 = account_from_value(args[0]);
      t.item = item_from_value(args[1]);
      t.a2 = account_from_value(args[2]);
      t.place = placeholder_from_value(args[3]);
      break;
    case 5:
      t.tr = Tr::ReceiveLike;
      t.a1 = account_from_value(args[0]);
      t.place = placeholder_from_value(args[1]);
      t.uid = args[2].as_nat();
      t.a2 = account_from_value(args[3]);
      break;
    case 6:
      t.tr = Tr::ViewPhoto;
      t.a1 = account_from_value(args[0]);
      t.a2 = account_from_value(args[1]);
      break;
    case 7:
      t.tr = Tr::ViewFriends;
      t.a1 = account_from_value(args[0]);
      t.a2 = account_from_value(args[1]);
      break;
    case 8:
      t.tr = Tr::SetVisibility;
      t.a1 = account_from_value(args[0]);
      t.flag = args[1].as_bool();
      break;
    default:
      throw SignatureError("bad transition index");
  }
  return t;
}

bool NetworkOts::condition(const State& s, const TrInstance& t) const {
  switch (t.tr) {
    case Tr::Add:
      return !s.has(t.a1.v);
    case Tr::Del:
      return s.has(t.a1.v);
    case Tr::ReceiveFriend: {
      const auto* p = s.find(t.a1.v);
      return p && s.has(t.a2.v) && can_receive_friend_request(**p, t.a2);
    }
    case Tr::AcceptFriend: {
      const auto* p = s.find(t.a1.v);
      return p && s.has(t.a2.v) && can_accept_friend_request(**p, t.a2);
    }
    case Tr::Receive: {
      const auto* p = s.find(t.a1.v);
      return p && s.has(t.a2.v) && t.item.author == t.a2 &&
             can_receive_content(**p, t.item, t.place);
    }
    case Tr::ReceiveLike: {
      const auto* p = s.find(t.a1.v);
      return p && s.has(t.a2.v) && can_receive_like(**p, t.place, t.uid);
    }
    case Tr::ViewPhoto: {
      const auto* p = s.find(t.a1.v);
      return p && s.has(t.a2.v) && can_view_photos(**p, t.a2);
    }
    case Tr::ViewFriends: {
      const auto* p = s.find(t.a1.v);
      return p && s.has(t.a2.v) && can_view_friends(**p, t.a2);
    }
    case Tr::SetVisibility:
      return s.has(t.a1.v);
  }
  return false;
}

NetworkState NetworkOts::effect(const State& s, const TrInstance& t) const {
  switch (t.tr) {
    case Tr::Add: {
      bool vis = cfg_.default_visibility;
      return install_component(s, t.a1.v, [&](std::string_view id) {
        return profile_init(AccountId{std::string(id)}, vis);
      });
    }
    case Tr::Del:
      return remove_component(s, t.a1.v);
    case Tr::ReceiveFriend:
      return with_profile(s, t.a1,
                          [&](const ProfileState& p) { return receive_friend_request(p, t.a2); });
    case Tr::AcceptFriend: {
      // Synchronized double update: accept on a1's side, mirror on a2's side.
      // The mirror op is internally guarded so a pre-existing one-sided
      // friendship (reachable through del/re-add) cannot corrupt a2's state.
      NetworkState next = with_profile(
          s, t.a1, [&](const ProfileState& p) { return accept_friend_request(p, t.a2); });
      const auto* p2 = next.find(t.a2.v);
      if (can_befriend_direct(**p2, t.a1))
        next = with_profile(next, t.a2,
                            [&](const ProfileState& p) { return befriend_direct(p, t.a1); });
      return next;
    }
    case Tr::Receive:
      return with_profile(
          s, t.a1, [&](const ProfileState& p) { return receive_content(p, t.item, t.place); });
    case Tr::ReceiveLike:
      return with_profile(s, t.a1, [&](const ProfileState& p) {
        return receive_like(p, t.place, t.uid, t.a2);
      });
    case Tr::ViewPhoto:
      return with_profile(s, t.a1,
                          [&](const ProfileState& p) { return view_photos(p, t.a2); });
    case Tr::ViewFriends:
      return with_profile(s, t.a1,
                          [&](const ProfileState& p) { return view_friends(p, t.a2); });
    case Tr::SetVisibility:
      return with_profile(s, t.a1, [&](const ProfileState& p) {
        ProfileState next = p;
        next.visibility = t.flag;
        return next;
      });
  }
  throw Error("bad transition instance");
}

bool NetworkOts::condition(const State& s, std::string_view tr,
                           std::span<const Value> args) const {
  return condition(s, decode(tr, args));
}

NetworkState NetworkOts::effect(const State& s, std::string_view tr,
                                std::span<const Value> args) const {
  return effect(s, decode(tr, args));
}

}  // namespace otsv::social
