#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otsv/value.hpp"

namespace otsv {

// Structural size caps applied wherever state spaces or value domains are
// enumerated. They bound container growth, not the account universe itself
// (max_accounts only limits how many components the universe enumerator
// installs at once).
struct StructuralCaps {
  unsigned max_seq = 1;      // sequence length
  unsigned max_set = 2;      // set cardinality
  unsigned max_content = 1;  // content items per profile, all placements combined
  unsigned max_accounts = std::numeric_limits<unsigned>::max();

  bool operator==(const StructuralCaps&) const = default;
};

// Finite domains for the leaf sorts (keyed by sort name) plus structural
// caps. Domains for containers and tuples are derived on demand.
class Bounds {
 public:
  // Values must be non-empty, duplicate-free and of one kind.
  Bounds& domain(std::string sort_name, std::vector<Value> values);

  const std::vector<Value>* find_domain(std::string_view sort_name) const;

  // Full finite domain of a sort under these bounds, in canonical order:
  //  - bool: false, true
  //  - enumerations: declaration tag order
  //  - id/nat leaves: declared domain order
  //  - sets: subsets of size <= max_set, by element bitmask (low bit = first)
  //  - seqs: by length 0..max_seq, then lexicographic in domain order
  //  - tuples: cartesian product, rightmost field fastest
  std::vector<Value> domain_for(const Sort& sort) const;

  StructuralCaps caps;

 private:
  std::vector<std::pair<std::string, std::vector<Value>>> domains_;
};

// All argument tuples for a parameter list, rightmost parameter fastest.
// A nullary parameter list yields exactly one empty tuple.
std::vector<std::vector<Value>> enumerate_instances(std::span<const Sort> params,
                                                    const Bounds& bounds);

}  // namespace otsv
