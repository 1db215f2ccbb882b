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

#ifndef PERIMETER_MODEL_HPP
#define PERIMETER_MODEL_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "perimeter/geometry.hpp"

namespace perimeter {

/// The five constants of a homogeneous game.
struct ScenarioParams
{
    double circumference = 0.0;
    int defender_count = 0;
    double defense_length = 0.0;
    double defender_speed = 0.0;
    double attacker_speed = 0.0;

    /// n * d >= C: the defenders can cover the whole boundary without moving.
    bool full_coverage() const noexcept { return defender_count * defense_length >= circumference; }

    friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

struct Violation
{
    std::string field;
    std::string message;
    bool informational = false;
};

/// Checks the non-trivial-case preconditions. Full coverage is reported as an
/// informational entry, not an error.
inline std::vector<Violation> validate(const ScenarioParams& p)
{
    std::vector<Violation> out;
    auto finite = [&](double v, const char* field) {
        if (!std::isfinite(v)) {
            out.push_back({field, "must be finite", false});
            return false;
        }
        return true;
    };
    if (finite(p.circumference, "circumference") && !(p.circumference > 0.0))
        out.push_back({"circumference", "must be positive", false});
    if (p.defender_count < 1) out.push_back({"defender_count", "must be at least 1", false});
    if (finite(p.defense_length, "defense_length") && !(p.defense_length > 0.0))
        out.push_back({"defense_length", "must be positive", false});
    const bool vd = finite(p.defender_speed, "defender_speed");
    const bool va = finite(p.attacker_speed, "attacker_speed");
    if (vd && p.defender_speed < 0.0) out.push_back({"defender_speed", "must be non-negative", false});
    if (vd && va && !(p.defender_speed < p.attacker_speed))
        out.push_back({"attacker_speed", "defenders must be strictly slower than the attacker", false});

    bool errors = false;
    for (const auto& v : out) errors = errors || !v.informational;
    if (!errors && p.full_coverage())
        out.push_back({"defense_length", "full coverage: defender_count * defense_length >= circumference", true});
    return out;
}

inline bool is_valid(const ScenarioParams& p)
{
    for (const auto& v : validate(p))
        if (!v.informational) return false;
    return true;
}

inline void require_valid(const ScenarioParams& p)
{
    for (const auto& v : validate(p))
        if (!v.informational) throw InvalidArgument(v.field + ": " + v.message);
}

struct AgentState
{
    CircPos position;
    Direction direction = Direction::Positive;
    double speed = 0.0;

    double velocity() const noexcept { return sign(direction) * speed; }
};

/// Timestamped snapshot of the game. Defenders are stored 0-based in
/// positive-direction order; `blocker` is 0-based as well.
struct GameState
{
    double time = 0.0;
    double defense_length = 0.0;
    AgentState attacker;
    std::vector<AgentState> defenders;
    std::size_t blocker = 0;

    double circumference() const noexcept { return attacker.position.circumference(); }
    std::size_t defender_count() const noexcept { return defenders.size(); }
    std::size_t next_index(std::size_t i) const noexcept { return (i + 1) % defenders.size(); }
    std::size_t prev_index(std::size_t i) const noexcept { return (i + defenders.size() - 1) % defenders.size(); }
};

/// Closed interval of length d centered on defender `i`.
inline CircInterval defended_interval(const GameState& s, std::size_t i)
{
    if (i >= s.defenders.size()) throw InvalidArgument("defender index out of range");
    const CircPos& x = s.defenders[i].position;
    return {x.moved(-0.5 * s.defense_length), s.defense_length};
}

/// Gaps d_{i,i+1}, with entry i the gap between defender i and its positive
/// neighbour (the last entry wraps to defender 0).
inline std::vector<double> gaps(const GameState& s)
{
    const std::size_t n = s.defenders.size();
    if (n == 0) throw InvalidArgument("game state has no defenders");
    if (n == 1) return {std::max(0.0, s.circumference() - s.defense_length)};
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = gap_after(defended_interval(s, i), defended_interval(s, s.next_index(i)));
    return out;
}

inline bool covered_by_any(const GameState& s, const CircPos& p, double eps = kEps)
{
    for (std::size_t i = 0; i < s.defenders.size(); ++i)
        if (contains(defended_interval(s, i), p, eps)) return true;
    return false;
}

/// Reflection x -> -x of a snapshot. Defender order is reversed so the
/// mirrored list is still in positive-direction order; directions negate.
inline GameState mirror_state(const GameState& s)
{
    GameState m = s;
    const std::size_t n = s.defenders.size();
    auto flip = [](const AgentState& a) {
        return AgentState{wrap(-a.position.value(), a.position.circumference()), -a.direction, a.speed};
    };
    m.attacker = flip(s.attacker);
    for (std::size_t j = 0; j < n; ++j) m.defenders[j] = flip(s.defenders[n - 1 - j]);
    m.blocker = n - 1 - s.blocker;
    return m;
}

/// Piecewise-constant attacker direction schedule: flips at each switch time.
struct AttackerStrategy
{
    Direction initial_direction = Direction::Positive;
    std::vector<double> switch_times;

    Direction direction_at(double t) const noexcept
    {
        Direction d = initial_direction;
        for (double s : switch_times) {
            if (s > t) break;
            d = -d;
        }
        return d;
    }

    friend bool operator==(const AttackerStrategy&, const AttackerStrategy&) = default;
};

inline void require_valid(const AttackerStrategy& s)
{
    double prev = -1.0;
    for (double t : s.switch_times) {
        if (!std::isfinite(t) || t < 0.0) throw InvalidArgument("switch times must be finite and non-negative");
        if (t <= prev) throw InvalidArgument("switch times must be strictly increasing");
        prev = t;
    }
}

} // namespace perimeter

#endif // PERIMETER_MODEL_HPP
