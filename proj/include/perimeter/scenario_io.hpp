/*
 * Copyright 2026 The perimeter-defense Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PERIMETER_SCENARIO_IO_HPP
#define PERIMETER_SCENARIO_IO_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "perimeter/analytic.hpp"
#include "perimeter/model.hpp"

namespace perimeter {

/// Malformed scenario document; `field` names the offending key when known.
class ScenarioError : public InvalidArgument
{
public:
    ScenarioError(std::string field, const std::string& what) : InvalidArgument(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct Scenario
{
    ScenarioParams params;
    std::optional<InitialConfig> initial_config;
    std::optional<AttackerStrategy> attacker_strategy;
};

inline std::string_view to_string(InitialConfig c) { return c == InitialConfig::Case1 ? "case1" : "case2"; }

inline InitialConfig parse_initial_config(std::string_view s)
{
    if (s == "case1") return InitialConfig::Case1;
    if (s == "case2") return InitialConfig::Case2;
    throw ScenarioError("initial_config", "initial_config must be \"case1\" or \"case2\"");
}

namespace detail {

inline double number_field(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key)) throw ScenarioError(key, std::string("missing required field '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw ScenarioError(key, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

inline Direction direction_field(const nlohmann::json& v, const char* key)
{
    if (!v.is_number_integer() || (v.get<long long>() != 1 && v.get<long long>() != -1))
        throw ScenarioError(key, std::string("field '") + key + "' must be 1 or -1");
    return direction_from_int(static_cast<int>(v.get<long long>()));
}

} // namespace detail

/// Reads a scenario object. Exactly the five parameters are required; unknown
/// keys are rejected. Parameter values are not validated here.
inline Scenario scenario_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw ScenarioError("", "scenario must be a JSON object");
    static const char* const known[] = {"circumference",  "defender_count", "defense_length", "defender_speed",
                                        "attacker_speed", "initial_config", "attacker_strategy"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ScenarioError(key, "unknown field '" + key + "'");
    }

    Scenario s;
    s.params.circumference = detail::number_field(j, "circumference");
    const double n = detail::number_field(j, "defender_count");
    if (!j.at("defender_count").is_number_integer() || n > 1e9)
        throw ScenarioError("defender_count", "field 'defender_count' must be an integer");
    s.params.defender_count = static_cast<int>(n);
    s.params.defense_length = detail::number_field(j, "defense_length");
    s.params.defender_speed = detail::number_field(j, "defender_speed");
    s.params.attacker_speed = detail::number_field(j, "attacker_speed");

    if (j.contains("initial_config")) {
        const auto& v = j.at("initial_config");
        if (!v.is_string()) throw ScenarioError("initial_config", "initial_config must be a string");
        s.initial_config = parse_initial_config(v.get<std::string>());
    }
    if (j.contains("attacker_strategy")) {
        const auto& a = j.at("attacker_strategy");
        if (!a.is_object()) throw ScenarioError("attacker_strategy", "attacker_strategy must be an object");
        AttackerStrategy st;
        for (const auto& [key, value] : a.items()) {
            if (key != "initial_direction" && key != "switch_times")
                throw ScenarioError("attacker_strategy." + key, "unknown field 'attacker_strategy." + key + "'");
        }
        if (a.contains("initial_direction"))
            st.initial_direction = detail::direction_field(a.at("initial_direction"), "attacker_strategy.initial_direction");
        if (a.contains("switch_times")) {
            const auto& ts = a.at("switch_times");
            if (!ts.is_array()) throw ScenarioError("attacker_strategy.switch_times", "switch_times must be an array");
            for (const auto& t : ts) {
                if (!t.is_number())
                    throw ScenarioError("attacker_strategy.switch_times", "switch_times must hold numbers");
                st.switch_times.push_back(t.get<double>());
            }
        }
        try {
            require_valid(st);
        } catch (const InvalidArgument& e) {
            throw ScenarioError("attacker_strategy.switch_times", e.what());
        }
        s.attacker_strategy = std::move(st);
    }
    return s;
}

inline Scenario parse_scenario(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError("", std::string("malformed scenario JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

inline Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ScenarioError("", "cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

inline nlohmann::json to_json(const ScenarioParams& p)
{
    return {{"circumference", p.circumference},
            {"defender_count", p.defender_count},
            {"defense_length", p.defense_length},
            {"defender_speed", p.defender_speed},
            {"attacker_speed", p.attacker_speed}};
}

inline nlohmann::json to_json(const Scenario& s)
{
    nlohmann::json j = to_json(s.params);
    if (s.initial_config) j["initial_config"] = std::string(to_string(*s.initial_config));
    if (s.attacker_strategy)
        j["attacker_strategy"] = {{"initial_direction", sign(s.attacker_strategy->initial_direction)},
                                  {"switch_times", s.attacker_strategy->switch_times}};
    return j;
}

inline nlohmann::json to_json(const AnalyticReport& r)
{
    nlohmann::json j = {{"params", to_json(r.params)},
                        {"gamma", r.gamma},
                        {"optimal_gap", r.optimal_gap},
                        {"max_circumference", r.max_circumference},
                        {"attacker_wins", r.attacker_wins},
                        {"margin", r.margin},
                        {"min_defenders", r.min_defenders},
                        {"max_defense_length_threshold", r.max_defense_length_threshold},
                        {"case_transition_time", r.case_transition_time}};
    j["critical_speed_ratio"] = r.critical_speed_ratio ? nlohmann::json(*r.critical_speed_ratio) : nlohmann::json();
    return j;
}

} // namespace perimeter

#endif // PERIMETER_SCENARIO_IO_HPP
