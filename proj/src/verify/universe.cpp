#include "otsv/verify/universe.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "otsv/errors.hpp"

namespace otsv::verify {
namespace {

using social::AccountId;
using social::ContentItem;
using social::LikeEntry;
using social::PhotoView;
using social::Placeholder;
using social::ProfileState;

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kMaxPerOwner = 1'000'000;  // materialization guard

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSat - b ? kSat : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSat / b ? kSat : a * b;
}

std::uint64_t sat_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r = sat_mul(r, base);
  return r;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = sat_mul(r, n - k + i) / i;
  return r;
}

// Ordered arrangements of l distinct elements out of n.
std::uint64_t perm(std::uint64_t n, unsigned l) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < l; ++i) {
    if (n <= i) return 0;
    r = sat_mul(r, n - i);
  }
  return r;
}

// Number of subsets of an n-element set with at most max_set elements.
std::uint64_t subset_count(std::uint64_t n, unsigned max_set) {
  std::uint64_t r = 0;
  for (std::uint64_t k = 0; k <= std::min<std::uint64_t>(n, max_set); ++k)
    r = sat_add(r, binom(n, k));
  return r;
}

std::size_t domain_size(const Bounds& b, std::string_view sort) {
  const auto* d = b.find_domain(sort);
  return d ? d->size() : 0;
}

std::vector<std::string> id_tokens(const Bounds& b) {
  std::vector<std::string> out;
  if (const auto* d = b.find_domain("accountid"))
    for (const Value& v : *d) out.push_back(v.token());
  return out;
}

// Subsets of dom with at most max_set elements, by bitmask (low bit = first
// element), each subset sorted.
template <typename T>
std::vector<std::vector<T>> bounded_subsets(const std::vector<T>& dom, unsigned max_set) {
  if (dom.size() > 30)
    throw UniverseRefused("subset domain with " + std::to_string(dom.size()) +
                              " elements is too large to enumerate",
                          kSat);
  std::vector<std::vector<T>> out;
  const std::uint32_t end = std::uint32_t{1} << dom.size();
  for (std::uint32_t m = 0; m < end; ++m) {
    if (static_cast<unsigned>(std::popcount(m)) > max_set) continue;
    std::vector<T> sub;
    for (std::size_t i = 0; i < dom.size(); ++i)
      if (m & (std::uint32_t{1} << i)) sub.push_back(dom[i]);
    std::sort(sub.begin(), sub.end());
    out.push_back(std::move(sub));
  }
  return out;
}

// Ordered item sequences with pairwise distinct uids, grouped by length.
void seq_fill(const std::vector<ContentItem>& dom, std::size_t len, std::vector<ContentItem>& cur,
              std::vector<std::vector<ContentItem>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (const ContentItem& it : dom) {
    bool used = false;
    for (const ContentItem& prev : cur)
      if (prev.uid == it.uid) {
        used = true;
        break;
      }
    if (used) continue;
    cur.push_back(it);
    seq_fill(dom, len, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<ContentItem>> item_sequences(const std::vector<ContentItem>& dom,
                                                     unsigned max_seq) {
  std::vector<std::vector<ContentItem>> out;
  std::vector<ContentItem> cur;
  for (unsigned len = 0; len <= max_seq; ++len) seq_fill(dom, len, cur, out);
  return out;
}

}  // namespace

std::vector<std::shared_ptr<const ProfileState>> enumerate_profile_states(
    const std::string& owner, const Bounds& b) {
  const StructuralCaps& caps = b.caps;
  std::vector<std::string> ids = id_tokens(b);
  std::vector<AccountId> id_dom;
  for (const auto& t : ids) id_dom.push_back({t});

  std::vector<ContentItem> item_dom;
  if (const auto* uids = b.find_domain("nat")) {
    if (const auto* pays = b.find_domain("payload")) {
      for (const auto& a : ids)
        for (const Value& u : *uids)
          for (const Value& p : *pays) item_dom.push_back({{a}, u.as_nat(), p.token()});
    }
  }
  const auto seqs = item_sequences(item_dom, caps.max_seq);

  // Content skeletons: one sequence per placement, total within max_content,
  // likes map canonical with all-empty likers.
  std::vector<ProfileState> acc;
  for (const auto& w : seqs)
    for (const auto& i : seqs)
      for (const auto& p : seqs) {
        if (w.size() + i.size() + p.size() > caps.max_content) continue;
        ProfileState s;
        s.myid = {owner};
        s.wall = w;
        s.inbox = i;
        s.photos = p;
        for (Placeholder pl : {Placeholder::Wall, Placeholder::Inbox, Placeholder::Photos})
          for (const ContentItem& it : items_of(s, pl)) s.likes.push_back({pl, it.uid, {}});
        std::sort(s.likes.begin(), s.likes.end());
        acc.push_back(std::move(s));
      }

  // Likers per item: odometer over bounded subsets, last entry fastest.
  const auto id_subsets = bounded_subsets(id_dom, caps.max_set);
  {
    std::vector<ProfileState> next;
    for (const ProfileState& s : acc) {
      std::vector<std::size_t> pick(s.likes.size(), 0);
      while (true) {
        ProfileState t = s;
        for (std::size_t k = 0; k < pick.size(); ++k) t.likes[k].likers = id_subsets[pick[k]];
        next.push_back(std::move(t));
        std::size_t k = pick.size();
        while (k > 0 && ++pick[k - 1] == id_subsets.size()) pick[--k] = 0;
        if (k == 0) break;
      }
    }
    acc = std::move(next);
  }

  // Photo views: any bounded subset of viewer x existing-photo-uid pairs.
  {
    std::vector<ProfileState> next;
    for (const ProfileState& s : acc) {
      std::vector<PhotoView> pairs;
      for (const AccountId& viewer : id_dom)
        for (const ContentItem& it : s.photos) pairs.push_back({viewer, it.uid});
      for (auto& sel : bounded_subsets(pairs, caps.max_set)) {
        ProfileState t = s;
        t.photo_views = std::move(sel);
        next.push_back(std::move(t));
      }
    }
    acc = std::move(next);
  }

  // Friends and pending: disjoint bounded subsets of the other accounts.
  std::vector<AccountId> others;
  for (const AccountId& a : id_dom)
    if (a.v != owner) others.push_back(a);
  std::vector<std::pair<std::vector<AccountId>, std::vector<AccountId>>> frpend;
  for (const auto& fr : bounded_subsets(others, caps.max_set)) {
    std::vector<AccountId> rest;
    for (const AccountId& a : others)
      if (!std::binary_search(fr.begin(), fr.end(), a)) rest.push_back(a);
    for (auto& pe : bounded_subsets(rest, caps.max_set)) frpend.emplace_back(fr, std::move(pe));
  }
  {
    std::vector<ProfileState> next;
    for (const ProfileState& s : acc)
      for (const auto& [fr, pe] : frpend) {
        ProfileState t = s;
        t.friends = fr;
        t.pending = pe;
        next.push_back(std::move(t));
      }
    acc = std::move(next);
  }

  // Friend-list views and visibility.
  std::vector<std::shared_ptr<const ProfileState>> out;
  out.reserve(acc.size() * id_subsets.size() * 2);
  for (const ProfileState& s : acc)
    for (const auto& flv : id_subsets)
      for (bool vis : {false, true}) {
        ProfileState t = s;
        t.friend_list_views = flv;
        t.visibility = vis;
        out.push_back(std::make_shared<const ProfileState>(std::move(t)));
      }
  return out;
}

std::uint64_t count_profile_states(const Bounds& b) {
  const StructuralCaps& caps = b.caps;
  const std::uint64_t a = domain_size(b, "accountid");
  const std::uint64_t u = domain_size(b, "nat");
  const std::uint64_t p = domain_size(b, "payload");
  const std::uint64_t o = a == 0 ? 0 : a - 1;

  auto seq_count = [&](unsigned len) {
    return sat_mul(perm(u, len), sat_pow(sat_mul(a, p), len));
  };
  const std::uint64_t likers = subset_count(a, caps.max_set);

  std::uint64_t content = 0;
  for (unsigned lw = 0; lw <= caps.max_seq; ++lw)
    for (unsigned li = 0; li <= caps.max_seq; ++li)
      for (unsigned lp = 0; lp <= caps.max_seq; ++lp) {
        if (lw + li + lp > caps.max_content) continue;
        std::uint64_t term = sat_mul(sat_mul(seq_count(lw), seq_count(li)), seq_count(lp));
        term = sat_mul(term, sat_pow(likers, lw + li + lp));
        term = sat_mul(term, subset_count(sat_mul(a, lp), caps.max_set));
        content = sat_add(content, term);
      }

  std::uint64_t fp = 0;
  for (std::uint64_t i = 0; i <= std::min<std::uint64_t>(o, caps.max_set); ++i)
    fp = sat_add(fp, sat_mul(binom(o, i), subset_count(o - i, caps.max_set)));

  std::uint64_t r = content;
  r = sat_mul(r, fp);
  r = sat_mul(r, subset_count(a, caps.max_set));  // friend-list views
  return sat_mul(r, 2);                           // visibility
}

std::uint64_t count_universe(const Bounds& b) {
  const std::uint64_t a = domain_size(b, "accountid");
  const std::uint64_t pp = count_profile_states(b);
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= std::min<std::uint64_t>(a, b.caps.max_accounts); ++k)
    total = sat_add(total, sat_mul(binom(a, k), sat_pow(pp, static_cast<unsigned>(k))));
  return total;
}

UniverseEnumerator::UniverseEnumerator(const Bounds& b, std::uint64_t limit) {
  total_ = count_universe(b);
  if (total_ > limit)
    throw UniverseRefused("universe has " + std::to_string(total_) +
                              " states, above the configured limit of " + std::to_string(limit),
                          total_);
  ids_ = id_tokens(b);
  if (ids_.size() > 30)
    throw UniverseRefused("account domain with " + std::to_string(ids_.size()) +
                              " ids is too large to enumerate",
                          total_);
  max_accounts_ = b.caps.max_accounts;
  if (max_accounts_ > 0) {
    const std::uint64_t pp = count_profile_states(b);
    if (pp > kMaxPerOwner)
      throw UniverseRefused("per-account state list has " + std::to_string(pp) +
                                " entries, above the materialization limit of " +
                                std::to_string(kMaxPerOwner),
                            total_);
    for (const std::string& id : ids_) per_owner_.push_back(enumerate_profile_states(id, b));
  }
  reset();
}

void UniverseEnumerator::reset() {
  mask_ = 0;
  sel_.clear();
  pick_.clear();
  done_ = false;
}

void UniverseEnumerator::next_mask() {
  if (max_accounts_ == 0) {
    done_ = true;
    return;
  }
  const std::uint64_t end = std::uint64_t{1} << ids_.size();
  while (true) {
    if (++mask_ >= end) {
      done_ = true;
      return;
    }
    if (static_cast<unsigned>(std::popcount(mask_)) > max_accounts_) continue;
    sel_.clear();
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (mask_ & (std::uint32_t{1} << i)) sel_.push_back(i);
    pick_.assign(sel_.size(), 0);
    return;
  }
}

bool UniverseEnumerator::next(social::NetworkState& out) {
  if (done_) return false;
  out = social::NetworkState{};
  for (std::size_t k = 0; k < sel_.size(); ++k) {
    out.data.ids.push_back(ids_[sel_[k]]);
    out.put(ids_[sel_[k]], per_owner_[sel_[k]][pick_[k]]);
  }
  std::sort(out.data.ids.begin(), out.data.ids.end());

  std::size_t k = pick_.size();
  while (k > 0 && ++pick_[k - 1] == per_owner_[sel_[k - 1]].size()) pick_[--k] = 0;
  if (k == 0) next_mask();
  return true;
}

}  // namespace otsv::verify
