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

#ifndef PERIMETER_BRUTE_FORCE_HPP
#define PERIMETER_BRUTE_FORCE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "perimeter/engine.hpp"
#include "perimeter/model.hpp"

namespace perimeter {

class ResourceBoundExceeded : public PerimeterError
{
public:
    using PerimeterError::PerimeterError;
};

/// The attacker family searched: every schedule with at most `max_switches`
/// direction flips at grid times k * grid (k >= 1) inside the switch window,
/// for both initial directions.
///
/// Zero-valued fields take defaults derived from the blocking period
/// P = d / (v_a - v_agent): grid P/8, switch window 4P, horizon
/// 10 C / (v_a - v_agent), handoff limit 3n.
struct SearchSettings
{
    int max_switches = 3;
    double grid = 0.0;
    double switch_window = 0.0;
    double horizon = 0.0;
    std::size_t handoff_limit = 0;
    std::uint64_t schedule_cap = 1'000'000;
    unsigned threads = 1; ///< 0: hardware concurrency
};

struct SearchResult
{
    bool breach_found = false;
    double breach_time = std::numeric_limits<double>::infinity();
    double breach_position = 0.0;
    AttackerStrategy best;                 ///< meaningful when breach_found
    std::uint64_t schedules_searched = 0;  ///< size of the family
    SearchSettings settings;               ///< with defaults filled in
    double max_conservation_error = 0.0;
    std::uint64_t simulations = 0;         ///< schedules actually run (rest pruned)
};

inline double blocking_period(const ScenarioParams& p, const GameState& config)
{
    return config.defense_length / (p.attacker_speed - p.defender_speed);
}

inline SearchSettings resolve_settings(const ScenarioParams& p, const GameState& config, SearchSettings s)
{
    if (s.max_switches < 0) throw InvalidArgument("max_switches must be non-negative");
    const double period = blocking_period(p, config);
    if (s.grid <= 0.0) s.grid = period / 8.0;
    if (s.switch_window <= 0.0) s.switch_window = 4.0 * period;
    if (s.horizon <= 0.0) s.horizon = default_horizon(p);
    if (s.handoff_limit == 0) s.handoff_limit = 3 * config.defenders.size();
    if (!std::isfinite(s.grid) || !std::isfinite(s.horizon) || !std::isfinite(s.switch_window))
        throw InvalidArgument("search grid, window and horizon must be finite");
    return s;
}

/// Grid times available for switches.
inline std::vector<double> switch_grid(const SearchSettings& s)
{
    const double limit = std::min(s.switch_window, s.horizon);
    std::vector<double> out;
    for (std::uint64_t k = 1;; ++k) {
        const double t = static_cast<double>(k) * s.grid;
        if (t >= limit - 1e-12 * limit) break;
        out.push_back(t);
        if (out.size() > 100'000'000) throw ResourceBoundExceeded("switch grid too fine");
    }
    return out;
}

inline std::uint64_t family_size(std::uint64_t grid_points, int max_switches, std::uint64_t cap)
{
    // 2 * sum_{k<=K} C(M, k), saturating just above cap
    std::uint64_t total = 0;
    std::uint64_t binom = 1;
    for (int k = 0; k <= max_switches; ++k) {
        if (k > 0) {
            if (static_cast<std::uint64_t>(k) > grid_points) break;
            const double next = static_cast<double>(binom) * static_cast<double>(grid_points - k + 1) / k;
            if (next > 4.0 * static_cast<double>(cap) + 4.0) return cap + 1;
            binom = binom * (grid_points - k + 1) / k;
        }
        total += 2 * binom;
        if (total > cap) return cap + 1;
    }
    return total;
}

namespace detail {

/// Tie-break order: +1 before -1, then switch lists compared lexicographically.
inline auto schedule_key(const AttackerStrategy& s)
{
    return std::make_tuple(s.initial_direction == Direction::Positive ? 0 : 1, std::cref(s.switch_times));
}

inline bool better(double t, const AttackerStrategy& s, double best_t, const AttackerStrategy& best)
{
    if (t != best_t) return t < best_t;
    return schedule_key(s) < schedule_key(best);
}

inline void atomic_min(std::atomic<double>& target, double v)
{
    double cur = target.load();
    while (v < cur && !target.compare_exchange_weak(cur, v)) {
    }
}

} // namespace detail

/// Exhaustive search for the earliest breach over the attacker family.
/// Schedules whose remaining switches all fall after the best breach found so
/// far behave like their truncation up to that breach and are skipped; the
/// result does not depend on the thread count.
inline SearchResult brute_force_attacker(const ScenarioParams& params, const GameState& config,
                                         const SearchSettings& settings = {})
{
    require_valid(params);
    SearchResult result;
    result.settings = resolve_settings(params, config, settings);
    const SearchSettings& s = result.settings;
    if (!(s.grid > 0.0) || !(s.horizon > 0.0)) throw InvalidArgument("grid and horizon must be positive");

    const std::vector<double> grid = switch_grid(s);
    const std::uint64_t family = family_size(grid.size(), s.max_switches, s.schedule_cap);
    if (family > s.schedule_cap)
        throw ResourceBoundExceeded("attacker family exceeds " + std::to_string(s.schedule_cap) +
                                    " schedules; coarsen the grid or lower max_switches");
    result.schedules_searched = family;

    // one task per (initial direction, first switch or none)
    struct Task
    {
        Direction dir;
        std::optional<std::size_t> first;
    };
    std::vector<Task> tasks;
    for (Direction dir : {Direction::Positive, Direction::Negative}) {
        tasks.push_back({dir, std::nullopt});
        if (s.max_switches > 0)
            for (std::size_t j = 0; j < grid.size(); ++j) tasks.push_back({dir, j});
    }

    std::atomic<double> shared_best{std::numeric_limits<double>::infinity()};
    std::atomic<std::size_t> next_task{0};
    std::mutex merge_mutex;

    auto worker = [&]() {
        bool have = false;
        double best_t = std::numeric_limits<double>::infinity();
        double best_pos = 0.0;
        AttackerStrategy best;
        double cons = 0.0;
        std::uint64_t sims = 0;
        AttackerStrategy sched;

        auto run = [&]() {
            EngineOptions opts;
            opts.horizon = std::min(s.horizon, shared_best.load());
            opts.record_trace = false;
            opts.handoff_limit = s.handoff_limit;
            const SimOutcome o = simulate(params, config, sched, opts);
            ++sims;
            cons = std::max(cons, o.stats.max_conservation_error);
            if (o.verdict.breach && (!have || detail::better(o.verdict.time, sched, best_t, best))) {
                have = true;
                best_t = o.verdict.time;
                best_pos = *o.verdict.position;
                best = sched;
                detail::atomic_min(shared_best, best_t);
            }
        };
        // extend the current schedule with switches at grid indices > `from`
        auto extend = [&](auto&& self, std::size_t from) -> void {
            if (static_cast<int>(sched.switch_times.size()) >= s.max_switches) return;
            for (std::size_t j = from; j < grid.size(); ++j) {
                if (grid[j] > shared_best.load()) break;
                sched.switch_times.push_back(grid[j]);
                run();
                self(self, j + 1);
                sched.switch_times.pop_back();
            }
        };

        for (std::size_t t; (t = next_task.fetch_add(1)) < tasks.size();) {
            const Task& task = tasks[t];
            sched.initial_direction = task.dir;
            sched.switch_times.clear();
            if (!task.first) {
                run();
                continue;
            }
            if (grid[*task.first] > shared_best.load()) continue;
            sched.switch_times.push_back(grid[*task.first]);
            run();
            extend(extend, *task.first + 1);
        }

        std::lock_guard lock(merge_mutex);
        result.simulations += sims;
        result.max_conservation_error = std::max(result.max_conservation_error, cons);
        if (have && (!result.breach_found || detail::better(best_t, best, result.breach_time, result.best))) {
            result.breach_found = true;
            result.breach_time = best_t;
            result.breach_position = best_pos;
            result.best = best;
        }
    };

    unsigned threads = s.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : s.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    return result;
}

} // namespace perimeter

#endif // PERIMETER_BRUTE_FORCE_HPP
