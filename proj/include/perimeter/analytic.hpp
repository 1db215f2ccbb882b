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

#ifndef PERIMETER_ANALYTIC_HPP
#define PERIMETER_ANALYTIC_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "perimeter/model.hpp"

// Closed-form results for homogeneous defenders: how long one defender can
// hold the attacker, the widest gap two approaching defenders can close in
// that time, and the largest circumference n defenders can hold.

namespace perimeter {

/// The threshold does not exist (defenders cover the boundary at any speed).
class NoFiniteThreshold : public PerimeterError
{
public:
    using PerimeterError::PerimeterError;
};

namespace detail {
inline void require_faster_attacker(double v_agent, double v_a)
{
    if (!(v_agent >= 0.0) || !(v_a > v_agent))
        throw InvalidArgument("attacker speed must exceed a non-negative defender speed");
}
} // namespace detail

/// Time a defender moving with the attacker keeps it covered when the attacker
/// has `d_a1` of swath left ahead of it.
inline double blocking_time(double d_a1, double v_a, double v_def)
{
    detail::require_faster_attacker(v_def, v_a);
    if (!(d_a1 >= 0.0)) throw InvalidArgument("remaining swath must be non-negative");
    return d_a1 / (v_a - v_def);
}

/// Whether two defenders approaching at v1 + v2 close `gap` within `t`.
inline bool gap_closable(double t, double gap, double v1, double v2)
{
    if (gap <= 0.0) return true;
    const double closing = v1 + v2;
    if (closing <= 0.0) return false;
    return t * closing >= gap;
}

inline double gamma(double v_agent, double v_a)
{
    detail::require_faster_attacker(v_agent, v_a);
    return 2.0 * v_agent / (v_a - v_agent);
}

inline double gamma(const ScenarioParams& p) { return gamma(p.defender_speed, p.attacker_speed); }

/// Widest inter-defender gap that still closes exactly when the blocker is exhausted.
inline double optimal_gap(const ScenarioParams& p) { return p.defense_length * gamma(p); }

inline double max_circumference(const ScenarioParams& p)
{
    if (p.defender_count < 1) throw InvalidArgument("defender_count must be at least 1");
    const double n = p.defender_count;
    return n * p.defense_length + (n - 1.0) * optimal_gap(p);
}

struct WinVerdict
{
    bool attacker_wins = false;
    double margin = 0.0; ///< C - C_max
};

/// Attacker wins iff C > C_max (strict: C == C_max is held by the defenders).
inline WinVerdict attacker_wins(const ScenarioParams& p)
{
    const double margin = p.circumference - max_circumference(p);
    return {margin > 0.0 && !p.full_coverage(), margin};
}

/// Smallest n whose C_max reaches C.
inline int min_defenders(double circumference, double d_agent, double v_agent, double v_a)
{
    const double g = gamma(v_agent, v_a);
    if (!(circumference > 0.0) || !(d_agent > 0.0)) throw InvalidArgument("circumference and defense length must be positive");
    if (circumference <= d_agent) return 1;
    const double x = (circumference / d_agent + g) / (1.0 + g);
    // slack keeps exact integer thresholds from rounding up one defender too many
    const double n = std::ceil(x * (1.0 - 1e-12));
    return std::max(1, static_cast<int>(n));
}

/// v_a / v_agent above which the attacker wins; throws NoFiniteThreshold when C/d <= n.
inline double critical_speed_ratio(double circumference, double d_agent, int n)
{
    if (!(circumference > 0.0) || !(d_agent > 0.0) || n < 1)
        throw InvalidArgument("critical_speed_ratio needs C > 0, d > 0, n >= 1");
    const double ratio = circumference / d_agent;
    if (ratio <= n) throw NoFiniteThreshold("C/d_agent <= n: defenders hold at any speed ratio");
    return 2.0 * (n - 1) / (ratio - n) + 1.0;
}

/// Swath length below which the attacker wins.
inline double max_defense_threshold(double circumference, int n, double v_agent, double v_a)
{
    if (n < 1) throw InvalidArgument("n must be at least 1");
    return circumference / (n + (n - 1) * gamma(v_agent, v_a));
}

/// Delay between the touch-point start and the mid-swath start of the same play.
inline double case_transition_time(const ScenarioParams& p)
{
    detail::require_faster_attacker(p.defender_speed, p.attacker_speed);
    return 0.5 * p.defense_length / (p.attacker_speed - p.defender_speed);
}

/// The attacker-wins predicate in each of its rearranged forms. Forms whose
/// denominators vanish fall back to the degenerate answer (see comments).
struct WinInequalities
{
    bool by_circumference = false;
    bool by_defense_length = false;
    bool by_gamma = false;
    bool by_speed_ratio = false;
};

inline WinInequalities win_inequalities(const ScenarioParams& p)
{
    const double g = gamma(p);
    const double n = p.defender_count;
    const double cd = p.circumference / p.defense_length;
    WinInequalities w;
    w.by_circumference = cd > n + (n - 1.0) * g;
    w.by_defense_length = p.defense_length < max_defense_threshold(p.circumference, p.defender_count,
                                                                   p.defender_speed, p.attacker_speed);
    // n == 1: gamma drops out, the attacker wins iff C > d
    w.by_gamma = p.defender_count == 1 ? cd > 1.0 : g < (cd - n) / (n - 1.0);
    if (cd <= n) {
        w.by_speed_ratio = false;
    } else if (p.defender_speed == 0.0) {
        w.by_speed_ratio = true; // infinite ratio
    } else {
        w.by_speed_ratio = p.attacker_speed / p.defender_speed > 2.0 * (n - 1.0) / (cd - n) + 1.0;
    }
    return w;
}

struct AnalyticReport
{
    ScenarioParams params;
    double gamma = 0.0;
    double optimal_gap = 0.0;
    double max_circumference = 0.0;
    bool attacker_wins = false;
    double margin = 0.0;
    int min_defenders = 1;
    double max_defense_length_threshold = 0.0;
    std::optional<double> critical_speed_ratio; ///< empty: no finite threshold
    double case_transition_time = 0.0;
};

inline AnalyticReport analyze(const ScenarioParams& p)
{
    require_valid(p);
    AnalyticReport r;
    r.params = p;
    r.gamma = gamma(p);
    r.optimal_gap = optimal_gap(p);
    r.max_circumference = max_circumference(p);
    const auto w = attacker_wins(p);
    r.attacker_wins = w.attacker_wins;
    r.margin = w.margin;
    r.min_defenders = min_defenders(p.circumference, p.defense_length, p.defender_speed, p.attacker_speed);
    r.max_defense_length_threshold =
        max_defense_threshold(p.circumference, p.defender_count, p.defender_speed, p.attacker_speed);
    try {
        r.critical_speed_ratio = critical_speed_ratio(p.circumference, p.defense_length, p.defender_count);
    } catch (const NoFiniteThreshold&) {
        r.critical_speed_ratio.reset();
    }
    r.case_transition_time = case_transition_time(p);
    return r;
}

enum class InitialConfig { Case1, Case2 };

/// A generated starting state plus any caveats about it.
struct Configuration
{
    GameState state;
    std::vector<std::string> warnings;
};

namespace detail {

inline Configuration make_config(const ScenarioParams& p, InitialConfig kind)
{
    require_valid(p);
    const int n = p.defender_count;
    const double c = p.circumference;
    Configuration cfg;
    double d = p.defense_length;
    if (n * d > c) {
        // a swath longer than C/n is never needed; the defenders close the ring
        d = c / n;
        cfg.warnings.push_back("full coverage: swaths shortened to C/n = " + format_number(d) + " to form a closed ring");
    }
    const double cmax = max_circumference(p);
    if (c > cmax)
        cfg.warnings.push_back("circumference exceeds C_max by " + format_number(c - cmax) +
                               "; the configuration cannot hold");

    const double g = n > 1 ? std::max(0.0, (c - n * d) / (n - 1)) : 0.0;
    GameState& s = cfg.state;
    s.time = 0.0;
    s.defense_length = d;
    s.blocker = 0;
    s.defenders.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double start = 0.0;
        if (kind == InitialConfig::Case1)
            start = i * (d + g);
        else if (i > 0)
            start = d + 0.5 * g + (i - 1) * (d + g);
        auto& def = s.defenders[static_cast<std::size_t>(i)];
        def.position = CircPos(start + 0.5 * d, c);
        def.direction = i == 0 ? Direction::Positive : Direction::Negative;
        def.speed = p.defender_speed;
    }
    const double attacker_at = kind == InitialConfig::Case1 ? 0.0 : 0.5 * d;
    s.attacker = AgentState{CircPos(attacker_at, c), Direction::Positive, p.attacker_speed};
    return cfg;
}

} // namespace detail

/// Attacker at the touch point of defenders n and 1; the (n,1) gap is zero and
/// the remaining n-1 gaps are equal. Accepts any C (C > C_max is flagged).
inline Configuration case1_config(const ScenarioParams& p) { return detail::make_config(p, InitialConfig::Case1); }

/// Attacker at defender 1's center; the gaps on both sides of defender 1 are
/// half the interior gap.
inline Configuration case2_config(const ScenarioParams& p) { return detail::make_config(p, InitialConfig::Case2); }

inline Configuration make_config(const ScenarioParams& p, InitialConfig kind) { return detail::make_config(p, kind); }

} // namespace perimeter

#endif // PERIMETER_ANALYTIC_HPP
