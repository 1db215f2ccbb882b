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

#ifndef PERIMETER_FIXED_STEP_HPP
#define PERIMETER_FIXED_STEP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "perimeter/engine.hpp"
#include "perimeter/model.hpp"
#include "perimeter/strategy.hpp"

// Reference integrator: uniform Euler steps with the attacker's direction
// sampled at the start of each step (zero-order hold), the policy re-evaluated
// every step, and overlapping moves clipped back to contact. Shares no
// event-timing code with the event-driven engine; it only exists to
// cross-check it.

namespace perimeter {

namespace detail::fixed {

struct Ring
{
    double c;
    double d;
    std::vector<double> x;           // defender centers
    std::vector<double> start_gap{}; // scratch for clip_displacements

    double spacing(std::size_t i, const std::vector<double>& pos) const
    {
        const std::size_t n = pos.size();
        double s = std::fmod(pos[(i + 1) % n] - pos[i], c);
        if (s < 0.0) s += c;
        return s;
    }
    double gap(std::size_t i, const std::vector<double>& pos) const
    {
        if (pos.size() == 1) return c - d;
        return spacing(i, pos) - d;
    }
};

/// Clip displacements so no gap goes negative. Only the part of a step that
/// moves a defender toward its neighbour is shortened.
inline void clip_displacements(Ring& ring, std::vector<double>& step)
{
    const std::size_t n = step.size();
    if (n < 2) return;
    auto& start_gap = ring.start_gap;
    start_gap.resize(n);
    for (std::size_t i = 0; i < n; ++i) start_gap[i] = std::max(0.0, ring.gap(i, ring.x));
    for (std::size_t iter = 0; iter < 4 * n + 4; ++iter) {
        bool clipped = false;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + 1) % n;
            const double after = start_gap[i] + step[j] - step[i];
            if (after >= -1e-15) continue;
            const double push_i = std::max(step[i], 0.0);
            const double push_j = std::max(-step[j], 0.0);
            const double total = push_i + push_j;
            if (total <= 0.0) continue;
            const double excess = -after;
            step[i] -= push_i * std::min(1.0, excess / total);
            step[j] += push_j * std::min(1.0, excess / total);
            clipped = true;
        }
        if (!clipped) return;
    }
}

} // namespace detail::fixed

/// Fixed-timestep simulation with the same verdict semantics as `simulate`.
/// A crossing of the blocker's edge inside a step is located by linear
/// interpolation; it is a handoff if the neighbour's swath reaches the edge at
/// that instant and a breach otherwise.
inline SimOutcome fixed_step_simulate(const ScenarioParams& params, const GameState& initial,
                                      const AttackerStrategy& strategy, double dt, double horizon = 0.0,
                                      bool record_trace = false)
{
    require_valid(params);
    require_valid(strategy);
    if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
    if (horizon <= 0.0) horizon = default_horizon(params);

    const std::size_t n = initial.defenders.size();
    const double c = initial.circumference();
    const double d = initial.defense_length;
    const double va = params.attacker_speed;
    const double v = params.defender_speed;
    const bool whole = n == 1 && d >= c - kEps;

    detail::fixed::Ring ring{c, d, {}};
    ring.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) ring.x[i] = initial.defenders[i].position.value();
    double xa = initial.attacker.position.value();
    std::size_t blocker = initial.blocker;
    const double t0 = initial.time;

    auto wrapc = [c](double x) { return wrap_value(x, c); };
    // signed offset of point p from center x, in [-C/2, C/2)
    auto rel = [&](double p, double x) { return wrapc(p - x + 0.5 * c) - 0.5 * c; };

    SimOutcome out;
    auto snapshot = [&](double t, Direction dir) {
        GameState g = initial;
        g.time = t;
        g.blocker = blocker;
        g.attacker.position = CircPos(xa, c);
        g.attacker.direction = dir;
        for (std::size_t i = 0; i < n; ++i) g.defenders[i].position = CircPos(ring.x[i], c);
        return g;
    };
    auto log = [&](double t, EventKind k, const char* subject, Direction dir) {
        ++out.stats.events;
        if (record_trace) out.trace.push_back({t, k, subject, snapshot(t, dir)});
    };
    log(t0, EventKind::Start, "-", strategy.direction_at(t0));

    const auto steps = static_cast<std::size_t>(std::ceil((horizon - t0) / dt - 1e-9));
    std::vector<double> step(n);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = t0 + k * dt;
        const double h = std::min(dt, horizon - t);
        if (h <= 0.0) break;
        const Direction dir = strategy.direction_at(t + 1e-9 * dt);
        const int s = sign(dir);

        // re-derive the blocker from coverage; at a shared edge take the
        // swath extending in the direction of travel
        if (!whole) {
            double ahead = 0.5 * d - s * rel(xa, ring.x[blocker]);
            if (ahead < -kEps || ahead > d + kEps) {
                bool found = false;
                for (std::size_t i = 0; i < n && !found; ++i) {
                    const double a = 0.5 * d - s * rel(xa, ring.x[i]);
                    if (a >= -kEps && a <= d + kEps) blocker = i, found = true;
                }
                if (!found) {
                    out.verdict = {true, t, xa, false};
                    log(t, EventKind::Breach, "attacker", dir);
                    return out;
                }
                ahead = 0.5 * d - s * rel(xa, ring.x[blocker]);
            }
            if (ahead <= kEps && n >= 2) {
                const std::size_t nb = s > 0 ? (blocker + 1) % n : (blocker + n - 1) % n;
                const double back_of_nb = 0.5 * d + s * rel(xa, ring.x[nb]);
                if (back_of_nb >= -kEps && back_of_nb <= d + kEps) blocker = nb;
            }
        }

        for (std::size_t i = 0; i < n; ++i) step[i] = (i == blocker ? s : -s) * v * h;
        detail::fixed::clip_displacements(ring, step);

        // attacker progress through successive swaths during this step
        double frac = 0.0;
        while (!whole) {
            const double xb = ring.x[blocker] + step[blocker] * frac;
            const double ahead = 0.5 * d - s * rel(xa + s * va * h * frac, xb);
            const double closing = va * h - s * step[blocker];
            const double cross = frac + std::max(0.0, ahead) / closing;
            if (cross > 1.0) break;
            const std::size_t nb = n >= 2 ? (s > 0 ? (blocker + 1) % n : (blocker + n - 1) % n) : blocker;
            double gap_at_cross = c - d;
            if (n >= 2) {
                std::vector<double> pos(n);
                for (std::size_t i = 0; i < n; ++i) pos[i] = ring.x[i] + step[i] * cross;
                gap_at_cross = ring.gap(s > 0 ? blocker : nb, pos);
            }
            if (gap_at_cross > kEps) {
                const double tb = t + cross * h;
                xa = wrapc(ring.x[blocker] + step[blocker] * cross + s * 0.5 * d);
                for (std::size_t i = 0; i < n; ++i) ring.x[i] = wrapc(ring.x[i] + step[i] * cross);
                out.verdict = {true, tb, xa, false};
                log(tb, EventKind::Breach, "attacker", dir);
                return out;
            }
            blocker = nb;
            ++out.stats.handoffs;
            // the attacker may cross the new blocker's swath within this step too
            frac = cross;
        }

        xa = wrapc(xa + s * va * h);
        for (std::size_t i = 0; i < n; ++i) ring.x[i] = wrapc(ring.x[i] + step[i]);
    }
    out.verdict = {false, horizon, std::nullopt, false};
    log(horizon, EventKind::HorizonReached, "horizon", strategy.direction_at(horizon));
    return out;
}

} // namespace perimeter

#endif // PERIMETER_FIXED_STEP_HPP
