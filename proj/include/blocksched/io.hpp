#pragma once

#include <string>

#include <json.hpp>

#include "blocksched/model.hpp"

namespace bsched {

nlohmann::json graph_to_json(const BlockCutTree& g);
BlockCutTree graph_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

// "3/4", "0.75" or "2". Throws InvalidInput.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);
// Fixed two-decimal rendering, rounded half away from zero.
std::string format_fixed2(const Rational& r);

}  // namespace bsched
