#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "otsv/bounds.hpp"
#include "otsv/social/model.hpp"

namespace otsv::verify {

inline constexpr std::uint64_t kDefaultUniverseLimit = 10'000'000;

// Every structurally valid profile state owned by `owner` under the bounds'
// domains and caps, in a fixed deterministic order (content skeleton, then
// likes, photo views, friends/pending, friend-list views, visibility;
// later axes vary fastest). States are shared so network states built from
// them stay cheap.
std::vector<std::shared_ptr<const social::ProfileState>> enumerate_profile_states(
    const std::string& owner, const Bounds& b);

// Saturating counts matching the enumerators exactly (asserted in tests).
std::uint64_t count_profile_states(const Bounds& b);
std::uint64_t count_universe(const Bounds& b);

// Streams every structurally valid network state under the bounds exactly
// once: each subset of the account domain (within caps.max_accounts, by
// bitmask, low bit first) combined with independently chosen profile states
// (odometer, last installed account fastest). Counts first and refuses with
// UniverseRefused when the total exceeds the limit, or when a single
// per-owner list would be too large to materialize.
class UniverseEnumerator {
 public:
  explicit UniverseEnumerator(const Bounds& b, std::uint64_t limit = kDefaultUniverseLimit);

  std::uint64_t size() const { return total_; }

  // Writes the next state into out; returns false once exhausted.
  bool next(social::NetworkState& out);
  void reset();

 private:
  void next_mask();

  std::vector<std::string> ids_;
  std::vector<std::vector<std::shared_ptr<const social::ProfileState>>> per_owner_;
  std::uint64_t total_ = 0;
  unsigned max_accounts_ = 0;
  std::uint32_t mask_ = 0;
  std::vector<std::size_t> sel_;   // account indices in the current mask
  std::vector<std::size_t> pick_;  // odometer over per_owner_ lists
  bool done_ = false;
};

}  // namespace otsv::verify
