#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otsv/bounds.hpp"
#include "otsv/kernel.hpp"
#include "otsv/signature.hpp"
#include "otsv/value.hpp"

namespace otsv::social {

struct AccountId {
  std::string v;
  auto operator<=>(const AccountId&) const = default;
};

enum class Placeholder : std::uint8_t { Wall, Inbox, Photos };

inline constexpr const char* kPlaceholderTags[] = {"wall", "inbox", "photos"};
const char* placeholder_tag(Placeholder p);
std::optional<Placeholder> placeholder_from_tag(std::string_view tag);

struct ContentItem {
  AccountId author;
  std::uint64_t uid = 0;
  std::string payload;
  auto operator<=>(const ContentItem&) const = default;
};

struct LikeEntry {
  Placeholder place = Placeholder::Wall;
  std::uint64_t uid = 0;
  std::vector<AccountId> likers;  // sorted
  auto operator<=>(const LikeEntry&) const = default;
};

struct PhotoView {
  AccountId viewer;
  std::uint64_t uid = 0;
  auto operator<=>(const PhotoView&) const = default;
};

// Hidden state of one profile. Sequences keep insertion order; every other
// collection is a sorted duplicate-free vector. The likes map is kept
// canonical: exactly one entry per existing content item (possibly empty).
struct ProfileState {
  AccountId myid;
  bool visibility = true;
  std::vector<ContentItem> wall;
  std::vector<ContentItem> inbox;
  std::vector<ContentItem> photos;
  std::vector<LikeEntry> likes;               // sorted by (place, uid)
  std::vector<AccountId> friends;             // sorted
  std::vector<AccountId> pending;             // sorted
  std::vector<PhotoView> photo_views;         // sorted
  std::vector<AccountId> friend_list_views;   // sorted

  bool operator==(const ProfileState&) const = default;
};

const std::vector<ContentItem>& items_of(const ProfileState& p, Placeholder place);
std::vector<ContentItem>& items_of(ProfileState& p, Placeholder place);
const ContentItem* find_item(const ProfileState& p, Placeholder place, std::uint64_t uid);
const LikeEntry* find_like(const ProfileState& p, Placeholder place, std::uint64_t uid);

// ---------------------------------------------------------------------------
// Profile operations (pure). Each can_* is the component effective condition;
// the op itself assumes the condition and returns the updated state.

ProfileState profile_init(AccountId a, bool default_visibility);

bool can_receive_friend_request(const ProfileState& p, const AccountId& from);
ProfileState receive_friend_request(ProfileState p, const AccountId& from);

bool can_accept_friend_request(const ProfileState& p, const AccountId& from);
ProfileState accept_friend_request(ProfileState p, const AccountId& from);

bool can_befriend_direct(const ProfileState& p, const AccountId& other);
ProfileState befriend_direct(ProfileState p, const AccountId& other);

bool can_receive_content(const ProfileState& p, const ContentItem& item, Placeholder place);
ProfileState receive_content(ProfileState p, ContentItem item, Placeholder place);

bool can_receive_like(const ProfileState& p, Placeholder place, std::uint64_t uid);
ProfileState receive_like(ProfileState p, Placeholder place, std::uint64_t uid,
                          const AccountId& liker);

bool can_view_photos(const ProfileState& p, const AccountId& viewer);
ProfileState view_photos(ProfileState p, const AccountId& viewer);

bool can_view_friends(const ProfileState& p, const AccountId& viewer);
ProfileState view_friends(ProfileState p, const AccountId& viewer);

// Structural invariants of a profile: per-placeholder uid uniqueness, myid
// not in friends/pending, friends/pending disjoint, likes keys canonical
// (exactly the existing items), photo views referencing existing photos, and
// all sorted collections actually sorted. Returns a reason, or nullopt if ok.
std::optional<std::string> profile_structural_error(const ProfileState& p);

// ---------------------------------------------------------------------------
// Network (compound) state

struct InstalledSet {
  std::vector<std::string> ids;  // sorted

  bool contains(std::string_view id) const;
  void on_install(const std::string& id);
  void on_remove(std::string_view id);
  bool operator==(const InstalledSet&) const = default;
};

using NetworkState = CompositeState<InstalledSet, ProfileState>;

std::optional<std::string> network_structural_error(const NetworkState& s);

// Structural caps check used to bound reachability searches: placeholder
// sequences within max_seq, sets within max_set, total items within
// max_content.
bool within_caps(const ProfileState& p, const StructuralCaps& caps);
bool within_caps(const NetworkState& s, const StructuralCaps& caps);

// Compact unambiguous serialization of the raw structure; used as a cheap
// pre-filter key before observational digesting.
std::string structural_key(const NetworkState& s);
void structural_key_append(std::string& out, const ProfileState& p);

// ---------------------------------------------------------------------------
// Shared sorts and value conversions

const Sort& accountid_sort();
const Sort& payload_sort();
const Sort& placeholder_sort();
const Sort& content_sort();  // tuple (accountid, nat, payload)

Value to_value(const AccountId& a);
Value to_value(Placeholder p);
Value to_value(const ContentItem& item);
AccountId account_from_value(const Value& v);
Placeholder placeholder_from_value(const Value& v);
ContentItem item_from_value(const Value& v);

// Bounds with the three leaf domains this model draws from: accountid,
// nat (content uids), payload.
Bounds make_bounds(std::span<const std::string> account_ids,
                   std::span<const std::uint64_t> uids,
                   std::span<const std::string> payloads);

// Internal: body of the profile observers, indexed by ProfileOts observer
// position. The network observers reuse it so compound observation factors
// through projection by construction.
Value detail_profile_observe_at(const ProfileState& p, int idx, std::span<const Value> args);

// ---------------------------------------------------------------------------
// Behaviors

// Component OTS for one profile. Observers: wall, inbox, photoalbum,
// friends, pending, visibility, myid, likeset(uid, place),
// viewedphoto(viewer, uid), viewedfriends(viewer). Transitions:
// receivefriendrequest, acceptfriendrequest, befrienddirect, receivecontent,
// receiveclike, viewphoto, viewfriends.
class ProfileOts {
 public:
  struct Config {
    bool default_visibility = true;
  };

  using State = ProfileState;

  ProfileOts() : ProfileOts(Config{}) {}
  explicit ProfileOts(Config cfg);

  const Signature& signature() const { return sig_; }
  const Config& config() const { return cfg_; }

  State initial(std::span<const Value> args) const;  // one accountid argument
  Value observe(const State& s, std::string_view obs, std::span<const Value> args) const;
  bool condition(const State& s, std::string_view tr, std::span<const Value> args) const;
  State effect(const State& s, std::string_view tr, std::span<const Value> args) const;

 private:
  Config cfg_;
  Signature sig_;
};

// Decoded network transition instance: one decode per (transition, argument
// tuple), then condition/effect evaluate without touching Values again.
enum class Tr : std::uint8_t {
  Add,
  Del,
  ReceiveFriend,
  AcceptFriend,
  Receive,
  ReceiveLike,
  ViewPhoto,
  ViewFriends,
  SetVisibility
};

struct TrInstance {
  Tr tr = Tr::Add;
  AccountId a1;
  AccountId a2;
  ContentItem item;                          // Receive
  Placeholder place = Placeholder::Wall;     // Receive / ReceiveLike
  std::uint64_t uid = 0;                     // ReceiveLike
  bool flag = false;                         // SetVisibility
};

// Compound OTS for the whole network. Observers lift the profile observers
// with a leading owner argument (projection-totalized) plus the accounts
// observer; transitions are the compound ones: add, del, receivefriendSN,
// acceptfriendSN, receiveSN, receivelikeSN, viewphotoSN, viewfriendsSN and,
// when enabled, the setvisibility extension.
class NetworkOts {
 public:
  struct Config {
    bool default_visibility = true;
    bool set_visibility_extension = false;
    bool operator==(const Config&) const = default;
  };

  using State = NetworkState;

  NetworkOts() : NetworkOts(Config{}) {}
  explicit NetworkOts(Config cfg);

  const Signature& signature() const { return sig_; }
  const Config& config() const { return cfg_; }
  const ProfileOts& component() const { return component_; }

  State initial(std::span<const Value> args) const;  // no arguments
  State initial() const { return initial({}); }

  Value observe(const State& s, std::string_view obs, std::span<const Value> args) const;
  bool condition(const State& s, std::string_view tr, std::span<const Value> args) const;
  State effect(const State& s, std::string_view tr, std::span<const Value> args) const;

  // Totalized projection: uninstalled ids observe like a fresh profile.
  std::shared_ptr<const ProfileState> project(const State& s, const AccountId& a) const;

  TrInstance decode(std::string_view tr, std::span<const Value> args) const;
  bool condition(const State& s, const TrInstance& t) const;
  State effect(const State& s, const TrInstance& t) const;

 private:
  Value observe_at(const State& s, int idx, std::span<const Value> args) const;

  Config cfg_;
  ProfileOts component_;
  Signature sig_;
};

}  // namespace otsv::social
