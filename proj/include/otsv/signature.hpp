#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "otsv/value.hpp"

namespace otsv {

struct ObserverSpec {
  std::string name;
  std::vector<Sort> params;  // excluding the implicit state argument
  Sort result;
};

struct TransitionSpec {
  std::string name;
  std::vector<Sort> params;
};

// Declared interface of a behavior: named observers with parameter/result
// sorts and named conditional transitions. Names are unique across both
// families so scenario sources can refer to them without qualification.
class Signature {
 public:
  Signature& add_observer(ObserverSpec spec);
  Signature& add_transition(TransitionSpec spec);

  std::span<const ObserverSpec> observers() const { return observers_; }
  std::span<const TransitionSpec> transitions() const { return transitions_; }

  int observer_index(std::string_view name) const;    // -1 if absent
  int transition_index(std::string_view name) const;  // -1 if absent
  const ObserverSpec& observer_at(int idx) const { return observers_[idx]; }
  const TransitionSpec& transition_at(int idx) const { return transitions_[idx]; }

  const ObserverSpec& observer(std::string_view name) const;      // throws
  const TransitionSpec& transition(std::string_view name) const;  // throws

  // Validates argument count and sorts; throws SignatureError naming the
  // offending position. Shared by observe/condition/effect call paths.
  void check_call(const ObserverSpec& spec, std::span<const Value> args) const;
  void check_call(const TransitionSpec& spec, std::span<const Value> args) const;

  // Closest declared transition name by edit distance, for diagnostics.
  std::string nearest_transition(std::string_view name) const;

 private:
  void reserve_name(const std::string& name);
  std::vector<ObserverSpec> observers_;
  std::vector<TransitionSpec> transitions_;
  std::unordered_map<std::string, int> observer_idx_;
  std::unordered_map<std::string, int> transition_idx_;
};

}  // namespace otsv
