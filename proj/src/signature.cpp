#include "otsv/signature.hpp"

#include <algorithm>

#include "otsv/errors.hpp"

namespace otsv {

void Signature::reserve_name(const std::string& name) {
  if (name.empty()) throw SignatureError("signature entry needs a name");
  if (observer_idx_.count(name) || transition_idx_.count(name))
    throw SignatureError("duplicate signature name '" + name + "'");
}

Signature& Signature::add_observer(ObserverSpec spec) {
  reserve_name(spec.name);
  observer_idx_[spec.name] = static_cast<int>(observers_.size());
  observers_.push_back(std::move(spec));
  return *this;
}

Signature& Signature::add_transition(TransitionSpec spec) {
  reserve_name(spec.name);
  transition_idx_[spec.name] = static_cast<int>(transitions_.size());
  transitions_.push_back(std::move(spec));
  return *this;
}

int Signature::observer_index(std::string_view name) const {
  auto it = observer_idx_.find(std::string(name));
  return it == observer_idx_.end() ? -1 : it->second;
}

int Signature::transition_index(std::string_view name) const {
  auto it = transition_idx_.find(std::string(name));
  return it == transition_idx_.end() ? -1 : it->second;
}

const ObserverSpec& Signature::observer(std::string_view name) const {
  int idx = observer_index(name);
  if (idx < 0) throw SignatureError("unknown observer '" + std::string(name) + "'");
  return observers_[idx];
}

const TransitionSpec& Signature::transition(std::string_view name) const {
  int idx = transition_index(name);
  if (idx < 0) throw SignatureError("unknown transition '" + std::string(name) + "'");
  return transitions_[idx];
}

static void check_args(const std::string& name, const std::vector<Sort>& params,
                       std::span<const Value> args) {
  if (args.size() != params.size())
    throw SignatureError("'" + name + "' expects " + std::to_string(params.size()) +
                         " argument(s), got " + std::to_string(args.size()));
  for (size_t i = 0; i < params.size(); ++i)
    if (!params[i].matches(args[i]))
      throw SignatureError("'" + name + "' argument " + std::to_string(i + 1) +
                           " is not of sort " + params[i].name() + ": " +
                           args[i].display());
}

void Signature::check_call(const ObserverSpec& spec, std::span<const Value> args) const {
  check_args(spec.name, spec.params, args);
}

void Signature::check_call(const TransitionSpec& spec, std::span<const Value> args) const {
  check_args(spec.name, spec.params, args);
}

static size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string Signature::nearest_transition(std::string_view name) const {
  std::string best;
  size_t best_d = SIZE_MAX;
  for (const auto& t : transitions_) {
    size_t d = edit_distance(name, t.name);
    if (d < best_d || (d == best_d && t.name < best)) {
      best_d = d;
      best = t.name;
    }
  }
  return best;
}

}  // namespace otsv
