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

#ifndef PERIMETER_ENGINE_HPP
#define PERIMETER_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "perimeter/model.hpp"
#include "perimeter/strategy.hpp"

// Event-driven simulation. Between events every agent moves at a constant
// velocity, so the time of the next event (attacker reaching the blocker's
// edge, a gap closing, a scheduled switch) is a closed-form quotient and the
// engine jumps straight to it.
//
// Defenders whose gap has closed are tracked with a contact flag. A defender
// that would move into a flagged contact is held at speed 0 until the policy
// moves it away again.

namespace perimeter {

/// Lower value wins when two events fall on the same instant. Start is only
/// ever the first trace entry.
enum class EventKind { Breach, Handoff, GapClosed, GapOpened, AttackerSwitch, HorizonReached, Start };

inline const char* to_string(EventKind k) noexcept
{
    switch (k) {
    case EventKind::Breach: return "breach";
    case EventKind::Handoff: return "handoff";
    case EventKind::GapClosed: return "gap_closed";
    case EventKind::GapOpened: return "gap_opened";
    case EventKind::AttackerSwitch: return "attacker_switch";
    case EventKind::HorizonReached: return "horizon";
    case EventKind::Start: return "start";
    }
    return "?";
}

struct Event
{
    double time = 0.0;
    EventKind kind = EventKind::Start;
    std::string subject;
    GameState snapshot;
};

struct Verdict
{
    bool breach = false;
    double time = 0.0;                ///< breach time, or the time the run stopped
    std::optional<double> position;   ///< breach position
    bool steady_state = false;        ///< defended because the play became periodic
};

struct SimStats
{
    std::size_t events = 0;
    std::size_t handoffs = 0;
    double max_conservation_error = 0.0; ///< max |sum(gaps) - (C - n d)| over events
    double max_handoff_gap = 0.0;        ///< largest gap bridged at a handoff, before snapping
};

struct SimOutcome
{
    Verdict verdict;
    std::vector<Event> trace;
    SimStats stats;
};

struct EngineOptions
{
    double horizon = 0.0; ///< <= 0: 10 C / (v_a - v_agent)
    std::size_t max_events = 1'000'000;
    bool record_trace = true;
    bool detect_steady_state = true;
    /// Stop as defended after this many handoffs past the last attacker
    /// switch; 0 disables the limit.
    std::size_t handoff_limit = 0;
};

class EventCapExceeded : public PerimeterError
{
public:
    EventCapExceeded(const std::string& what, SimOutcome partial)
        : PerimeterError(what), outcome(std::move(partial))
    {
    }
    SimOutcome outcome;
};

inline double default_horizon(const ScenarioParams& p)
{
    return 10.0 * p.circumference / (p.attacker_speed - p.defender_speed);
}

/// Engine-internal state: the game snapshot plus per-gap contact flags and
/// resolved defender velocities.
struct EngineState
{
    GameState game;
    std::vector<char> contact;     ///< contact[i]: gap (i, i+1) is closed
    std::vector<double> velocity;  ///< signed, after holding
    double defender_speed = 0.0;   ///< nominal v_agent
    std::size_t next_switch = 0;
};

struct PendingEvent
{
    double dt = std::numeric_limits<double>::infinity();
    EventKind kind = EventKind::HorizonReached;
    std::size_t index = 0; ///< gap or defender index, kind dependent
};

namespace detail {

inline bool ring_closed(const GameState& g)
{
    return g.defenders.size() == 1 && g.defense_length >= g.circumference() - kEps;
}

inline double gap_value(const GameState& g, std::size_t i)
{
    const std::size_t n = g.defenders.size();
    if (n == 1) return std::max(0.0, g.circumference() - g.defense_length);
    const double c = g.circumference();
    const double spacing = wrap_value(g.defenders[(i + 1) % n].position.value() - g.defenders[i].position.value(), c);
    const double gap = spacing - g.defense_length;
    if (gap < -kEps) throw CoordinationViolation("defenders " + std::to_string(i + 1) + " and " +
                                                 std::to_string((i + 1) % n + 1) + " overlap");
    return std::max(0.0, gap);
}

inline double gap_rate(const EngineState& s, std::size_t i)
{
    const std::size_t n = s.velocity.size();
    if (n == 1) return 0.0;
    return s.velocity[(i + 1) % n] - s.velocity[i];
}

/// Policy velocities, then hold any defender pushing into a closed gap.
inline void resolve_velocities(EngineState& s)
{
    GameState& g = s.game;
    const std::size_t n = g.defenders.size();
    const int dir = sign(g.attacker.direction);
    s.velocity.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.defenders[i].direction = i == g.blocker ? g.attacker.direction : -g.attacker.direction;
        s.velocity[i] = (i == g.blocker ? dir : -dir) * s.defender_speed;
    }
    if (n >= 2) {
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!s.contact[i]) continue;
                const std::size_t j = (i + 1) % n;
                if (s.velocity[i] <= s.velocity[j]) continue;
                if (s.velocity[i] > 0.0) s.velocity[i] = 0.0, changed = true;
                if (s.velocity[j] < 0.0) s.velocity[j] = 0.0, changed = true;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) g.defenders[i].speed = std::abs(s.velocity[i]);
}

inline std::size_t forward_gap_index(const GameState& g)
{
    return g.attacker.direction == Direction::Positive ? g.blocker : g.prev_index(g.blocker);
}

inline std::string gap_name(std::size_t i, std::size_t n)
{
    return std::to_string(i + 1) + "_" + std::to_string((i + 1) % n + 1);
}

/// Gap profile ordered from the blocker's forward gap, in attacker direction,
/// with contact flags; two equal signatures at handoffs mean periodic play.
struct Signature
{
    Direction dir = Direction::Positive;
    std::vector<double> gaps;
    std::vector<char> contact;

    bool matches(const Signature& o, double tol) const
    {
        if (dir != o.dir || gaps.size() != o.gaps.size() || contact != o.contact) return false;
        for (std::size_t k = 0; k < gaps.size(); ++k)
            if (std::abs(gaps[k] - o.gaps[k]) > tol) return false;
        return true;
    }
};

inline Signature signature(const EngineState& s)
{
    const GameState& g = s.game;
    const std::size_t n = g.defenders.size();
    Signature sig;
    sig.dir = g.attacker.direction;
    sig.gaps.resize(n);
    sig.contact.resize(n);
    const std::size_t first = forward_gap_index(g);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx = g.attacker.direction == Direction::Positive ? (first + k) % n : (first + n - k) % n;
        sig.gaps[k] = gap_value(g, idx);
        sig.contact[k] = s.contact[idx];
    }
    return sig;
}

} // namespace detail

/// Prepares engine state from a snapshot: attacker direction from the
/// strategy, contact flags from gaps within eps, velocities from the policy.
inline EngineState make_engine_state(const ScenarioParams& p, const GameState& initial, const AttackerStrategy& strategy)
{
    require_valid(strategy);
    EngineState s;
    s.game = initial;
    const std::size_t n = s.game.defenders.size();
    if (n == 0) throw InvalidArgument("game state has no defenders");
    if (s.game.blocker >= n) throw InvalidArgument("blocker index out of range");
    s.game.attacker.direction = strategy.initial_direction;
    s.game.attacker.speed = p.attacker_speed;
    s.defender_speed = p.defender_speed;
    s.contact.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) s.contact[i] = n >= 2 && detail::gap_value(s.game, i) <= kEps;
    if (!contains(defended_interval(s.game, s.game.blocker), s.game.attacker.position))
        throw GameDecided("attacker starts outside the blocking defender's swath");
    while (s.next_switch < strategy.switch_times.size() && strategy.switch_times[s.next_switch] < s.game.time)
        ++s.next_switch;
    detail::resolve_velocities(s);
    return s;
}

/// Earliest upcoming event, without applying it. Candidates that coincide to
/// within a few ulps are ranked by EventKind order.
inline PendingEvent next_event(const EngineState& s, const AttackerStrategy& strategy, double horizon)
{
    const GameState& g = s.game;
    const std::size_t n = g.defenders.size();
    const double now = g.time;

    PendingEvent out;
    bool have = false;
    auto consider = [&](double dt, EventKind kind, std::size_t index) {
        const double tol = 1e-15 * std::max(1.0, now + std::min(dt, out.dt));
        if (!have || dt < out.dt - tol || (dt <= out.dt + tol && kind < out.kind)) {
            out = {dt, kind, index};
            have = true;
        }
    };

    if (!detail::ring_closed(g)) {
        const int dir = sign(g.attacker.direction);
        const double ahead = std::max(0.0, remaining_ahead(g, g.blocker));
        const double closing = g.attacker.speed - dir * s.velocity[g.blocker];
        const double dt = ahead / closing;
        const std::size_t fg = detail::forward_gap_index(g);
        bool touches = false;
        if (n >= 2) {
            const double gap_then = detail::gap_value(g, fg) + detail::gap_rate(s, fg) * dt;
            touches = s.contact[fg] || gap_then <= kEps;
        }
        consider(dt, touches ? EventKind::Handoff : EventKind::Breach, fg);
    }
    for (std::size_t i = 0; n >= 2 && i < n; ++i) {
        const double rate = detail::gap_rate(s, i);
        if (s.contact[i]) {
            if (rate > 0.0) consider(0.0, EventKind::GapOpened, i);
        } else if (rate < 0.0) {
            consider(detail::gap_value(g, i) / -rate, EventKind::GapClosed, i);
        }
    }
    if (s.next_switch < strategy.switch_times.size())
        consider(std::max(0.0, strategy.switch_times[s.next_switch] - now), EventKind::AttackerSwitch, 0);
    consider(std::max(0.0, horizon - now), EventKind::HorizonReached, 0);
    return out;
}

namespace detail {

inline void advance(EngineState& s, double dt)
{
    if (dt <= 0.0) return;
    GameState& g = s.game;
    for (std::size_t i = 0; i < g.defenders.size(); ++i)
        g.defenders[i].position = g.defenders[i].position.moved(s.velocity[i] * dt);
    g.attacker.position = g.attacker.position.moved(sign(g.attacker.direction) * g.attacker.speed * dt);
    g.time += dt;
}

inline double conservation_error(const GameState& g)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < g.defenders.size(); ++i) sum += gap_value(g, i);
    const double expected = std::max(0.0, g.circumference() - g.defenders.size() * g.defense_length);
    return std::abs(sum - expected);
}

} // namespace detail

/// Runs the game from `initial` until a breach, the horizon, a detected
/// steady state or the handoff limit.
inline SimOutcome simulate(const ScenarioParams& params, const GameState& initial, const AttackerStrategy& strategy,
                           const EngineOptions& opts = {})
{
    require_valid(params);
    const double horizon = opts.horizon > 0.0 ? opts.horizon : default_horizon(params);
    EngineState s = make_engine_state(params, initial, strategy);
    GameState& g = s.game;
    const std::size_t n = g.defenders.size();

    SimOutcome out;
    auto record = [&](EventKind kind, auto&& subject) {
        ++out.stats.events;
        out.stats.max_conservation_error = std::max(out.stats.max_conservation_error, detail::conservation_error(g));
        if (opts.record_trace) out.trace.push_back({g.time, kind, std::string(subject()), g});
    };
    auto literal = [](const char* text) { return [text] { return text; }; };
    record(EventKind::Start, literal("-"));

    std::optional<detail::Signature> last_sig;
    std::size_t handoffs_after_switches = 0;
    const double sig_tol = 1e-12 * g.circumference();

    while (true) {
        if (out.stats.events >= opts.max_events)
            throw EventCapExceeded("event cap of " + std::to_string(opts.max_events) + " exceeded", std::move(out));

        const PendingEvent ev = next_event(s, strategy, horizon);
        detail::advance(s, ev.dt);
        const bool switches_done = s.next_switch >= strategy.switch_times.size();

        switch (ev.kind) {
        case EventKind::Breach: {
            const int dir = sign(g.attacker.direction);
            g.attacker.position = g.defenders[g.blocker].position.moved(dir * 0.5 * g.defense_length);
            out.verdict = {true, g.time, g.attacker.position.value(), false};
            record(ev.kind, literal("attacker"));
            return out;
        }
        case EventKind::Handoff: {
            const int dir = sign(g.attacker.direction);
            const std::size_t nb = neighbour_ahead(g, g.blocker, g.attacker.direction);
            const CircPos& xb = g.defenders[g.blocker].position;
            out.stats.max_handoff_gap = std::max(out.stats.max_handoff_gap, detail::gap_value(g, ev.index));
            g.attacker.position = xb.moved(dir * 0.5 * g.defense_length);
            // close any sub-eps residual exactly; a carried residual would grow
            // by (1 + gamma) at every later reversal
            g.defenders[nb].position = xb.moved(dir * g.defense_length);
            s.contact[ev.index] = 1;
            g.blocker = nb;
            ++out.stats.handoffs;
            detail::resolve_velocities(s);
            record(ev.kind, [&] { return std::to_string(g.blocker + 1); });

            if (switches_done) {
                ++handoffs_after_switches;
                if (opts.detect_steady_state) {
                    auto sig = detail::signature(s);
                    if (last_sig && last_sig->matches(sig, sig_tol)) {
                        out.verdict = {false, g.time, std::nullopt, true};
                        record(EventKind::HorizonReached, literal("steady_state"));
                        return out;
                    }
                    last_sig = std::move(sig);
                }
                if (opts.handoff_limit > 0 && handoffs_after_switches >= opts.handoff_limit) {
                    out.verdict = {false, g.time, std::nullopt, false};
                    record(EventKind::HorizonReached, literal("handoff_limit"));
                    return out;
                }
            }
            continue;
        }
        case EventKind::GapClosed: {
            const std::size_t i = ev.index, j = (i + 1) % n;
            s.contact[i] = 1;
            if (s.velocity[j] != 0.0)
                g.defenders[j].position = g.defenders[i].position.moved(g.defense_length);
            else
                g.defenders[i].position = g.defenders[j].position.moved(-g.defense_length);
            detail::resolve_velocities(s);
            record(ev.kind, [&] { return detail::gap_name(i, n); });
            continue;
        }
        case EventKind::GapOpened:
            s.contact[ev.index] = 0;
            record(ev.kind, [&] { return detail::gap_name(ev.index, n); });
            continue;
        case EventKind::AttackerSwitch:
            g.attacker.direction = -g.attacker.direction;
            ++s.next_switch;
            last_sig.reset();
            detail::resolve_velocities(s);
            record(ev.kind, literal("attacker"));
            continue;
        case EventKind::HorizonReached:
            out.verdict = {false, g.time, std::nullopt, false};
            record(ev.kind, literal("horizon"));
            return out;
        case EventKind::Start:
            break;
        }
    }
}

} // namespace perimeter

#endif // PERIMETER_ENGINE_HPP
