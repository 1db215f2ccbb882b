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

#ifndef PERIMETER_SWEEP_HPP
#define PERIMETER_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "perimeter/analytic.hpp"
#include "perimeter/brute_force.hpp"

namespace perimeter {

enum class SweepAxis { Circumference, DefenderCount, DefenseLength, DefenderSpeed, AttackerSpeed, SpeedRatio };

inline std::string_view to_string(SweepAxis a)
{
    switch (a) {
    case SweepAxis::Circumference: return "circumference";
    case SweepAxis::DefenderCount: return "defender_count";
    case SweepAxis::DefenseLength: return "defense_length";
    case SweepAxis::DefenderSpeed: return "defender_speed";
    case SweepAxis::AttackerSpeed: return "attacker_speed";
    case SweepAxis::SpeedRatio: return "speed_ratio";
    }
    return "?";
}

inline SweepAxis parse_axis(std::string_view name)
{
    for (SweepAxis a : {SweepAxis::Circumference, SweepAxis::DefenderCount, SweepAxis::DefenseLength,
                        SweepAxis::DefenderSpeed, SweepAxis::AttackerSpeed, SweepAxis::SpeedRatio})
        if (to_string(a) == name) return a;
    throw InvalidArgument("unknown sweep axis '" + std::string(name) + "'");
}

struct SweepSpec
{
    ScenarioParams base;
    SweepAxis axis = SweepAxis::Circumference;
    std::vector<double> values;
    SearchSettings search;      ///< zero grid/horizon: per-point defaults
    double horizon_mult = 10.0; ///< horizon = mult * C / (v_a - v_agent) unless search.horizon is set
    unsigned threads = 1;       ///< concurrent points; 0: hardware concurrency
};

struct SweepRow
{
    double axis_value = 0.0;
    ScenarioParams params;
    bool analytic_wins = false;
    bool simulated_wins = false;
    double margin = 0.0;
    std::optional<double> breach_time;
    std::optional<double> breach_pos;
    std::uint64_t schedules_searched = 0;
    bool in_band = false; ///< |margin| <= band: reported, not asserted
    double max_conservation_error = 0.0;

    bool agrees() const { return analytic_wins == simulated_wins; }
};

inline constexpr double kBoundaryBand = 1e-6; ///< relative to C

/// Applies one axis value to the base scenario and validates the result.
inline ScenarioParams sweep_point(const ScenarioParams& base, SweepAxis axis, double value)
{
    ScenarioParams p = base;
    switch (axis) {
    case SweepAxis::Circumference: p.circumference = value; break;
    case SweepAxis::DefenderCount:
        if (value != std::floor(value) || value < 1.0 || value > 1e6)
            throw InvalidArgument("defender_count sweep value " + std::to_string(value) + " is not a positive integer");
        p.defender_count = static_cast<int>(value);
        break;
    case SweepAxis::DefenseLength: p.defense_length = value; break;
    case SweepAxis::DefenderSpeed: p.defender_speed = value; break;
    case SweepAxis::AttackerSpeed: p.attacker_speed = value; break;
    case SweepAxis::SpeedRatio: p.attacker_speed = value * p.defender_speed; break;
    }
    const auto problems = validate(p);
    for (const auto& v : problems)
        if (!v.informational)
            throw InvalidArgument("sweep value " + std::to_string(value) + " on " + std::string(to_string(axis)) +
                                  " is invalid: " + v.message);
    return p;
}

inline SweepRow evaluate_point(const SweepSpec& spec, double value, unsigned search_threads = 1)
{
    SweepRow row;
    row.axis_value = value;
    row.params = sweep_point(spec.base, spec.axis, value);
    const ScenarioParams& p = row.params;
    const WinVerdict w = attacker_wins(p);
    row.analytic_wins = w.attacker_wins;
    row.margin = w.margin;
    row.in_band = std::abs(w.margin) <= kBoundaryBand * p.circumference;

    SearchSettings s = spec.search;
    if (s.horizon <= 0.0) s.horizon = spec.horizon_mult * p.circumference / (p.attacker_speed - p.defender_speed);
    s.threads = search_threads;
    const Configuration cfg = case1_config(p);
    const SearchResult r = brute_force_attacker(p, cfg.state, s);
    row.simulated_wins = r.breach_found;
    if (r.breach_found) {
        row.breach_time = r.breach_time;
        row.breach_pos = r.breach_position;
    }
    row.schedules_searched = r.schedules_searched;
    row.max_conservation_error = r.max_conservation_error;
    return row;
}

/// One row per value, in the order given. Points run concurrently when
/// `threads` allows; the rows do not depend on it.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec)
{
    if (spec.values.empty()) throw InvalidArgument("sweep needs at least one value");
    for (double v : spec.values) {
        if (!std::isfinite(v)) throw InvalidArgument("sweep values must be finite");
        sweep_point(spec.base, spec.axis, v);
    }
    std::vector<SweepRow> rows(spec.values.size());
    unsigned threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = evaluate_point(spec, spec.values[i]);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(rows.size());
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
                    try {
                        rows[i] = evaluate_point(spec, spec.values[i]);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

/// Number of verdict changes along the rows (0 or 1 for a monotone axis).
inline std::size_t verdict_crossings(const std::vector<SweepRow>& rows, bool simulated = true)
{
    std::size_t n = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const bool a = simulated ? rows[i - 1].simulated_wins : rows[i - 1].analytic_wins;
        const bool b = simulated ? rows[i].simulated_wins : rows[i].analytic_wins;
        n += a != b;
    }
    return n;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << "axis_value,analytic_wins,simulated_wins,margin,breach_time,breach_pos,schedules_searched\n";
    for (const auto& r : rows) {
        os << format_number(r.axis_value) << ',' << int(r.analytic_wins) << ',' << int(r.simulated_wins) << ','
           << format_number(r.margin) << ',' << (r.breach_time ? format_number(*r.breach_time) : "") << ','
           << (r.breach_pos ? format_number(*r.breach_pos) : "") << ',' << r.schedules_searched << '\n';
    }
}

} // namespace perimeter

#endif // PERIMETER_SWEEP_HPP
