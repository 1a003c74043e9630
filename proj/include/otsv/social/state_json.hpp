#pragma once

#include <json.hpp>

#include "otsv/social/model.hpp"

namespace otsv::social {

nlohmann::json state_to_json(const NetworkState& s);

// Rebuilds a state and validates it structurally; throws ReplayError on
// malformed input.
NetworkState state_from_json(const nlohmann::json& j);

}  // namespace otsv::social
