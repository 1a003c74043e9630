#pragma once

#include <algorithm>
#include <concepts>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otsv/bounds.hpp"
#include "otsv/errors.hpp"
#include "otsv/signature.hpp"
#include "otsv/value.hpp"

namespace otsv {

// Behavior bundle of an OTS: a signature plus total, pure implementations of
// initial / observe / condition / effect. The kernel, not the behavior,
// guards effect behind condition (see apply below).
template <typename B>
concept Ots = requires(const B& b, const typename B::State& s, std::string_view name,
                       std::span<const Value> args) {
  typename B::State;
  { b.signature() } -> std::convertible_to<const Signature&>;
  { b.initial(args) } -> std::same_as<typename B::State>;
  { b.observe(s, name, args) } -> std::same_as<Value>;
  { b.condition(s, name, args) } -> std::same_as<bool>;
  { b.effect(s, name, args) } -> std::same_as<typename B::State>;
};

template <typename S>
struct ApplyResult {
  S state;
  bool applied;
};

// Validated observation. Checks the observer name, argument sorts and the
// result sort before handing the value back.
template <Ots B>
Value observe(const B& b, const typename B::State& s, std::string_view obs,
              std::span<const Value> args) {
  const ObserverSpec& spec = b.signature().observer(obs);
  b.signature().check_call(spec, args);
  Value v = b.observe(s, obs, args);
  if (!spec.result.matches(v))
    throw SignatureError("'" + spec.name + "' produced a value outside its result sort " +
                         spec.result.name() + ": " + v.display());
  return v;
}

// Validated transition application with the stutter law enforced here: a
// false condition returns the input state unchanged and applied=false.
template <Ots B>
ApplyResult<typename B::State> apply(const B& b, const typename B::State& s,
                                     std::string_view tr, std::span<const Value> args) {
  const TransitionSpec& spec = b.signature().transition(tr);
  b.signature().check_call(spec, args);
  if (!b.condition(s, tr, args)) return {s, false};
  return {b.effect(s, tr, args), true};
}

inline std::vector<std::vector<Value>> enumerate_instances(const ObserverSpec& spec,
                                                           const Bounds& bounds) {
  return enumerate_instances(std::span<const Sort>(spec.params), bounds);
}

inline std::vector<std::vector<Value>> enumerate_instances(const TransitionSpec& spec,
                                                           const Bounds& bounds) {
  return enumerate_instances(std::span<const Sort>(spec.params), bounds);
}

// Pre-enumerated observer sweep: every observer of a signature paired with
// every argument tuple its params admit under the bounds, in declaration /
// domain order. Shared by states_equivalent and observation_digest so both
// walk observations in the same deterministic order.
class ObservationPlan {
 public:
  struct Entry {
    int observer;
    std::string name;
    std::vector<std::vector<Value>> tuples;
  };

  ObservationPlan(const Signature& sig, const Bounds& bounds) {
    int idx = 0;
    for (const ObserverSpec& spec : sig.observers()) {
      entries_.push_back({idx++, spec.name, enumerate_instances(spec, bounds)});
      total_ += entries_.back().tuples.size();
    }
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t total_instances() const { return total_; }

 private:
  std::vector<Entry> entries_;
  std::size_t total_ = 0;
};

// Observational equivalence bounded by the plan's argument tuples. The
// structural fast path is sound: observe is pure, so structurally equal
// states observe equally.
template <Ots B>
bool states_equivalent(const B& b, const typename B::State& s1, const typename B::State& s2,
                       const ObservationPlan& plan) {
  if constexpr (std::equality_comparable<typename B::State>) {
    if (s1 == s2) return true;
  }
  for (const auto& entry : plan.entries())
    for (const auto& tuple : entry.tuples)
      if (!(b.observe(s1, entry.name, tuple) == b.observe(s2, entry.name, tuple)))
        return false;
  return true;
}

template <Ots B>
bool states_equivalent(const B& b, const typename B::State& s1, const typename B::State& s2,
                       const Bounds& bounds) {
  return states_equivalent(b, s1, s2, ObservationPlan(b.signature(), bounds));
}

// Canonical digest: the concatenated (observer, args, value) serialization in
// plan order. Digest equality coincides exactly with states_equivalent over
// the same bounds. digest_hex() gives a short display form.
template <Ots B>
std::string observation_digest(const B& b, const typename B::State& s,
                               const ObservationPlan& plan) {
  std::string out;
  out.reserve(64 * plan.entries().size());
  for (const auto& entry : plan.entries()) {
    out += entry.name;
    out += '(';
    for (const auto& tuple : entry.tuples) {
      for (const Value& arg : tuple) arg.digest_append(out);
      out += '=';
      b.observe(s, entry.name, tuple).digest_append(out);
      out += ';';
    }
    out += ')';
  }
  return out;
}

template <Ots B>
std::string observation_digest(const B& b, const typename B::State& s, const Bounds& bounds) {
  return observation_digest(b, s, ObservationPlan(b.signature(), bounds));
}

// Hidden state of a dynamically composed object: model-specific compound data
// plus a key-sorted map from component id to immutable component state.
// Component states are shared copy-on-write; updating one component clones
// only that component.
template <typename Data, typename S>
struct CompositeState {
  Data data;
  std::vector<std::pair<std::string, std::shared_ptr<const S>>> components;

  const std::shared_ptr<const S>* find(std::string_view key) const {
    auto it = lower_bound(key);
    if (it != components.end() && it->first == key) return &it->second;
    return nullptr;
  }

  bool has(std::string_view key) const { return find(key) != nullptr; }

  void put(std::string key, std::shared_ptr<const S> comp) {
    auto it = lower_bound(key);
    if (it != components.end() && it->first == key)
      it->second = std::move(comp);
    else
      components.insert(it, {std::move(key), std::move(comp)});
  }

  void erase(std::string_view key) {
    auto it = lower_bound(key);
    if (it != components.end() && it->first == key) components.erase(it);
  }

  bool operator==(const CompositeState& other) const {
    if (!(data == other.data)) return false;
    if (components.size() != other.components.size()) return false;
    for (size_t i = 0; i < components.size(); ++i) {
      if (components[i].first != other.components[i].first) return false;
      if (components[i].second != other.components[i].second &&
          !(*components[i].second == *other.components[i].second))
        return false;
    }
    return true;
  }

 private:
  auto lower_bound(std::string_view key) {
    return std::lower_bound(components.begin(), components.end(), key,
                            [](const auto& p, std::string_view k) { return p.first < k; });
  }
  auto lower_bound(std::string_view key) const {
    return std::lower_bound(components.begin(), components.end(), key,
                            [](const auto& p, std::string_view k) { return p.first < k; });
  }
};

// Totalized projection: installed components come back as stored, everything
// else as a default-initialized component built by the factory.
template <typename Data, typename S, typename F>
std::shared_ptr<const S> project(const CompositeState<Data, S>& cs, std::string_view id,
                                 F&& default_factory) {
  if (const auto* found = cs.find(id)) return *found;
  return std::make_shared<const S>(default_factory(id));
}

// Adds id with its freshly built initial component state. The compound
// transition's condition must have checked absence already.
template <typename Data, typename S, typename F>
CompositeState<Data, S> install_component(CompositeState<Data, S> cs, std::string id,
                                          F&& initial_factory) {
  if (cs.has(id)) throw Error("component '" + id + "' already installed");
  cs.data.on_install(id);
  cs.put(id, std::make_shared<const S>(initial_factory(std::string_view(id))));
  return cs;
}

template <typename Data, typename S>
CompositeState<Data, S> remove_component(CompositeState<Data, S> cs, std::string_view id) {
  if (!cs.has(id)) throw Error("component '" + std::string(id) + "' not installed");
  cs.data.on_remove(id);
  cs.erase(id);
  return cs;
}

}  // namespace otsv
