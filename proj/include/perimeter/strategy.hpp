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

#ifndef PERIMETER_STRATEGY_HPP
#define PERIMETER_STRATEGY_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "perimeter/model.hpp"

namespace perimeter {

/// The attacker is no longer inside the blocker's swath.
class GameDecided : public PerimeterError
{
public:
    using PerimeterError::PerimeterError;
};

struct DirectionAssignment
{
    std::vector<Direction> directions;
    std::size_t blocker = 0;
};

/// Signed offset of `p` from the center of defender `i`, in [-C/2, C/2).
inline double offset_from_center(const GameState& s, std::size_t i, const CircPos& p)
{
    const double c = s.circumference();
    return wrap_value(p.value() - s.defenders[i].position.value() + 0.5 * c, c) - 0.5 * c;
}

/// Swath left ahead of the attacker inside defender `i` (d_{a,1} for the blocker).
inline double remaining_ahead(const GameState& s, std::size_t i)
{
    if (s.defense_length >= s.circumference() - kEps) return s.defense_length;
    const double o = offset_from_center(s, i, s.attacker.position);
    return 0.5 * s.defense_length - sign(s.attacker.direction) * o;
}

/// Index of the neighbour that lies ahead of defender `i` in direction `dir`.
inline std::size_t neighbour_ahead(const GameState& s, std::size_t i, Direction dir)
{
    return dir == Direction::Positive ? s.next_index(i) : s.prev_index(i);
}

/// The blocker moves with the attacker; every other defender moves the other
/// way to close the gap ahead of the attacker.
inline DirectionAssignment defender_policy(const GameState& s)
{
    if (s.blocker >= s.defenders.size()) throw InvalidArgument("blocker index out of range");
    if (!contains(defended_interval(s, s.blocker), s.attacker.position))
        throw GameDecided("attacker is not covered by the blocking defender");
    DirectionAssignment a;
    a.blocker = s.blocker;
    a.directions.assign(s.defenders.size(), -s.attacker.direction);
    a.directions[s.blocker] = s.attacker.direction;
    return a;
}

inline void apply_policy(GameState& s)
{
    const auto a = defender_policy(s);
    for (std::size_t i = 0; i < s.defenders.size(); ++i) s.defenders[i].direction = a.directions[i];
}

/// Whether the attacker sits on the blocker's leading edge with the next swath
/// touching it there.
inline bool handoff_ready(const GameState& s, double eps = kEps)
{
    if (s.defenders.size() < 2) return false;
    if (std::abs(remaining_ahead(s, s.blocker)) > eps) return false;
    const std::size_t nb = neighbour_ahead(s, s.blocker, s.attacker.direction);
    return contains(defended_interval(s, nb), s.attacker.position, eps);
}

/// Transfers the blocking role to the neighbour ahead of the attacker and
/// reassigns directions.
inline GameState handoff(const GameState& s)
{
    if (!handoff_ready(s)) throw InvalidArgument("handoff requires the attacker at a shared touch point");
    GameState out = s;
    out.blocker = neighbour_ahead(s, s.blocker, s.attacker.direction);
    apply_policy(out);
    return out;
}

inline AttackerStrategy constant_attacker(Direction d) { return {d, {}}; }

} // namespace perimeter

#endif // PERIMETER_STRATEGY_HPP
