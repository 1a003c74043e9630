#include "otsv/social/state_json.hpp"

#include <memory>

#include "otsv/errors.hpp"

namespace otsv::social {

using nlohmann::json;

namespace {

json items_to_json(const std::vector<ContentItem>& items) {
  json arr = json::array();
  for (const ContentItem& it : items)
    arr.push_back({{"author", it.author.v}, {"uid", it.uid}, {"payload", it.payload}});
  return arr;
}

json ids_to_json(const std::vector<AccountId>& ids) {
  json arr = json::array();
  for (const AccountId& a : ids) arr.push_back(a.v);
  return arr;
}

std::vector<ContentItem> items_from_json(const json& arr) {
  std::vector<ContentItem> out;
  for (const json& j : arr)
    out.push_back({AccountId{j.at("author").get<std::string>()},
                   j.at("uid").get<std::uint64_t>(), j.at("payload").get<std::string>()});
  return out;
}

std::vector<AccountId> ids_from_json(const json& arr) {
  std::vector<AccountId> out;
  for (const json& j : arr) out.push_back(AccountId{j.get<std::string>()});
  return out;
}

}  // namespace

json state_to_json(const NetworkState& s) {
  json profiles = json::object();
  for (const auto& [key, p] : s.components) {
    json likes = json::array();
    for (const LikeEntry& e : p->likes)
      likes.push_back({{"place", placeholder_tag(e.place)},
                       {"uid", e.uid},
                       {"likers", ids_to_json(e.likers)}});
    json views = json::array();
    for (const PhotoView& pv : p->photo_views)
      views.push_back({{"viewer", pv.viewer.v}, {"uid", pv.uid}});
    profiles[key] = {{"myid", p->myid.v},
                     {"visibility", p->visibility},
                     {"wall", items_to_json(p->wall)},
                     {"inbox", items_to_json(p->inbox)},
                     {"photos", items_to_json(p->photos)},
                     {"likes", likes},
                     {"friends", ids_to_json(p->friends)},
                     {"pending", ids_to_json(p->pending)},
                     {"photo_views", views},
                     {"friend_list_views", ids_to_json(p->friend_list_views)}};
  }
  json accounts = json::array();
  for (const std::string& id : s.data.ids) accounts.push_back(id);
  return {{"accounts", accounts}, {"profiles", profiles}};
}

NetworkState state_from_json(const json& j) {
  try {
    NetworkState s;
    for (const json& id : j.at("accounts")) s.data.ids.push_back(id.get<std::string>());
    for (const auto& [key, pj] : j.at("profiles").items()) {
      ProfileState p;
      p.myid = AccountId{pj.at("myid").get<std::string>()};
      p.visibility = pj.at("visibility").get<bool>();
      p.wall = items_from_json(pj.at("wall"));
      p.inbox = items_from_json(pj.at("inbox"));
      p.photos = items_from_json(pj.at("photos"));
      for (const json& e : pj.at("likes")) {
        auto place = placeholder_from_tag(e.at("place").get<std::string>());
        if (!place) throw ReplayError("bad placeholder tag in likes");
        p.likes.push_back({*place, e.at("uid").get<std::uint64_t>(),
                           ids_from_json(e.at("likers"))});
      }
      p.friends = ids_from_json(pj.at("friends"));
      p.pending = ids_from_json(pj.at("pending"));
      for (const json& v : pj.at("photo_views"))
        p.photo_views.push_back(
            {AccountId{v.at("viewer").get<std::string>()}, v.at("uid").get<std::uint64_t>()});
      p.friend_list_views = ids_from_json(pj.at("friend_list_views"));
      s.components.emplace_back(key, std::make_shared<const ProfileState>(std::move(p)));
    }
    std::sort(s.components.begin(), s.components.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (auto err = network_structural_error(s))
      throw ReplayError("state fails structural validation: " + *err);
    return s;
  } catch (const json::exception& e) {
    throw ReplayError(std::string("malformed state JSON: ") + e.what());
  }
}

}  // namespace otsv::social
