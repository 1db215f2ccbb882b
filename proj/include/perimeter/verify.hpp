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

#ifndef PERIMETER_VERIFY_HPP
#define PERIMETER_VERIFY_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "perimeter/analytic.hpp"
#include "perimeter/brute_force.hpp"
#include "perimeter/engine.hpp"
#include "perimeter/fixed_step.hpp"
#include "perimeter/strategy.hpp"
#include "perimeter/sweep.hpp"

// Seeded randomized property suite. Every draw picks the four game constants
// other than C, then evaluates C at fixed multiples of C_max that straddle the
// decision boundary.

namespace perimeter {

inline constexpr std::array<double, 4> kBoundaryFactors{0.9, 1.0, 1.001, 1.5};

/// n in [min_n, 8], v_agent in (0, 1], v_a / v_agent in (1, 5], d_agent in (0, 1]; C is left at 0.
inline ScenarioParams draw_params(std::mt19937_64& rng, int min_n = 1)
{
    std::uniform_int_distribution<int> count(min_n, 8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ScenarioParams p;
    p.defender_count = count(rng);
    p.defender_speed = 1.0 - u(rng);
    const double ratio = 1.0 + 4.0 * (1.0 - u(rng));
    p.attacker_speed = p.defender_speed * ratio;
    p.defense_length = 1.0 - u(rng);
    return p;
}

using MaxCircumferenceFn = std::function<double(const ScenarioParams&)>;

struct VerifyOptions
{
    std::uint64_t seed = 42;
    std::size_t count = 100;
    SearchSettings search;           ///< attacker family for boundary agreement
    double oracle_dt = 1e-4;         ///< fixed-step cross-check; 0 disables it
    MaxCircumferenceFn max_circumference = [](const ScenarioParams& p) { return perimeter::max_circumference(p); };
};

struct PropertyResult
{
    std::string name;
    std::size_t passed = 0;
    std::size_t run = 0;
    std::vector<std::string> failures; ///< first few, for the report

    bool ok() const { return passed == run; }
    void check(bool good, const std::string& what)
    {
        ++run;
        if (good)
            ++passed;
        else if (failures.size() < 5)
            failures.push_back(what);
    }
};

struct VerifyReport
{
    std::uint64_t seed = 0;
    std::size_t draws = 0;
    std::vector<PropertyResult> properties;

    bool ok() const
    {
        for (const auto& p : properties)
            if (!p.ok()) return false;
        return true;
    }
};

namespace detail {

inline PropertyResult make_property(const char* name)
{
    PropertyResult r;
    r.name = name;
    return r;
}

inline std::string describe(const ScenarioParams& p)
{
    return "C=" + format_number(p.circumference) + " n=" + std::to_string(p.defender_count) +
           " d=" + format_number(p.defense_length) + " v=" + format_number(p.defender_speed) +
           " va=" + format_number(p.attacker_speed);
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Handoffs, breaches, switches and the end of the run. Contact bookkeeping
/// is left out: a gap that closes exactly at a handoff may or may not log its
/// own event depending on the last bit of rounding.
inline std::vector<Event> decisive_events(const std::vector<Event>& trace)
{
    std::vector<Event> out;
    for (const Event& e : trace)
        if (e.kind != EventKind::GapClosed && e.kind != EventKind::GapOpened) out.push_back(e);
    return out;
}

/// Empty when two traces are reflections of each other (same decisive events
/// at the same times, mirrored breach point); otherwise the first difference.
inline std::string mirror_mismatch(const SimOutcome& a, const SimOutcome& b, double c)
{
    if (a.verdict.breach != b.verdict.breach) return "verdicts differ";
    const auto ea = decisive_events(a.trace);
    const auto eb = decisive_events(b.trace);
    if (ea.size() != eb.size())
        return "event counts " + std::to_string(ea.size()) + " and " + std::to_string(eb.size());
    for (std::size_t i = 0; i < ea.size(); ++i) {
        const Event& x = ea[i];
        const Event& y = eb[i];
        if (x.kind != y.kind || !near(x.time, y.time, 1e-12 * std::max(1.0, x.time)))
            return "event " + std::to_string(i) + ": " + std::string(to_string(x.kind)) + "@" + format_number(x.time) +
                   " vs " + std::string(to_string(y.kind)) + "@" + format_number(y.time);
    }
    if (a.verdict.breach) {
        const double diff = std::abs(*a.verdict.position - wrap_value(-*b.verdict.position, c));
        if (std::min(diff, c - diff) > 1e-9) return "breach points are not mirrored";
    }
    return {};
}

} // namespace detail

inline VerifyReport run_verify(const VerifyOptions& opts)
{
    if (opts.count < 1) throw InvalidArgument("verify needs count >= 1");
    VerifyReport report;
    report.seed = opts.seed;
    report.draws = opts.count;

    PropertyResult rearrangements = detail::make_property("rearranged_inequalities_agree");
    PropertyResult bracketing = detail::make_property("min_defenders_bracketing");
    PropertyResult monotone = detail::make_property("analytic_monotonicity");
    PropertyResult boundary = detail::make_property("boundary_agreement");
    PropertyResult conservation = detail::make_property("gap_conservation");
    PropertyResult critical = detail::make_property("critical_hold_zero_gap_handoffs");
    PropertyResult above = detail::make_property("breach_above_critical");
    PropertyResult case_sum = detail::make_property("case_circumference_identity");
    PropertyResult shift = detail::make_property("case_time_shift");
    PropertyResult mirror = detail::make_property("reflection_symmetry");
    PropertyResult oracle = detail::make_property("fixed_step_agreement");

    std::mt19937_64 rng(opts.seed);
    for (std::size_t k = 0; k < opts.count; ++k) {
        ScenarioParams base = draw_params(rng);
        const double cmax = opts.max_circumference(base);
        const int n = base.defender_count;
        const double va = base.attacker_speed;

        for (double f : kBoundaryFactors) {
            ScenarioParams p = base;
            p.circumference = cmax * f;
            const std::string tag = detail::describe(p);
            const double c = p.circumference;
            const bool predicted = c > opts.max_circumference(p) && !p.full_coverage();
            const bool outside_band = std::abs(c - opts.max_circumference(p)) > kBoundaryBand * c;

            if (outside_band) {
                const WinInequalities w = win_inequalities(p);
                rearrangements.check(w.by_circumference == predicted && w.by_defense_length == predicted &&
                                         w.by_gamma == predicted && w.by_speed_ratio == predicted,
                                     tag);
            }

            const int nstar = min_defenders(c, p.defense_length, p.defender_speed, va);
            ScenarioParams at = p;
            at.defender_count = nstar;
            bool good = !attacker_wins(at).attacker_wins;
            if (nstar > 1) {
                at.defender_count = nstar - 1;
                good = good && attacker_wins(at).attacker_wins;
            }
            bracketing.check(good, tag + " n*=" + std::to_string(nstar));

            if (outside_band) {
                auto wins = [](ScenarioParams q) { return attacker_wins(q).attacker_wins; };
                const bool w0 = wins(p);
                auto scaled = [&](auto member, double s) {
                    ScenarioParams q = p;
                    q.*member *= s;
                    return q;
                };
                ScenarioParams more_n = p;
                more_n.defender_count += 1;
                bool mono = (!w0 || wins(scaled(&ScenarioParams::circumference, 1.1))) &&
                            (!w0 || wins(scaled(&ScenarioParams::attacker_speed, 1.1))) &&
                            (w0 || !wins(scaled(&ScenarioParams::defense_length, 1.1))) &&
                            (w0 || !wins(scaled(&ScenarioParams::defender_speed, std::min(1.1, 0.5 * (1.0 + va / p.defender_speed))))) &&
                            (w0 || !wins(more_n));
                monotone.check(mono, tag);
            }

            const Configuration cfg = case1_config(p);
            const SearchResult r = brute_force_attacker(p, cfg.state, opts.search);
            conservation.check(r.max_conservation_error <= 1e-12 * c, tag + " search");
            if (outside_band)
                boundary.check(r.breach_found == predicted, tag + (r.breach_found ? " breached" : " held") +
                                                                " over " + std::to_string(r.schedules_searched) +
                                                                " schedules");

            if (opts.oracle_dt > 0.0 && outside_band) {
                const double period = blocking_period(p, cfg.state);
                std::vector<AttackerStrategy> family{constant_attacker(Direction::Positive),
                                                     constant_attacker(Direction::Negative)};
                if (r.breach_found) family.push_back(r.best);
                for (const auto& st : family) {
                    const double horizon = (st.switch_times.empty() ? 0.0 : st.switch_times.back()) + 2.5 * period;
                    EngineOptions eo;
                    eo.horizon = horizon;
                    eo.detect_steady_state = false;
                    const SimOutcome a = simulate(p, cfg.state, st, eo);
                    const SimOutcome b = fixed_step_simulate(p, cfg.state, st, opts.oracle_dt, horizon);
                    conservation.check(a.stats.max_conservation_error <= 1e-12 * c, tag + " oracle run");
                    bool same = a.verdict.breach == b.verdict.breach;
                    // the attacker's travel between the two breach instants stays within one step's travel
                    if (same && a.verdict.breach)
                        same = va * std::abs(a.verdict.time - b.verdict.time) <= va * opts.oracle_dt;
                    oracle.check(same, tag + " event " + (a.verdict.breach ? format_number(a.verdict.time) : "held") +
                                           " fixed " + (b.verdict.breach ? format_number(b.verdict.time) : "held"));
                }
            }
        }

        // exact critical circumference, plus a slightly larger one
        ScenarioParams crit = base;
        crit.circumference = perimeter::max_circumference(base);
        const std::string tag = detail::describe(crit);
        {
            const Configuration cfg = case1_config(crit);
            const SimOutcome o = simulate(crit, cfg.state, constant_attacker(Direction::Positive));
            conservation.check(o.stats.max_conservation_error <= 1e-12 * crit.circumference, tag + " critical");
            critical.check(!o.verdict.breach && o.stats.max_handoff_gap <= kEps, tag);
        }
        {
            ScenarioParams p = crit;
            p.circumference *= 1.0 + 1e-3;
            const Configuration cfg = case1_config(p);
            const SimOutcome o = simulate(p, cfg.state, constant_attacker(Direction::Positive));
            conservation.check(o.stats.max_conservation_error <= 1e-12 * p.circumference, tag + " above");
            above.check(o.verdict.breach && std::isfinite(o.verdict.time) && o.verdict.time > 0.0, tag);
        }

        if (n >= 2) {
            const Configuration c1 = case1_config(crit);
            const Configuration c2 = case2_config(crit);
            auto total = [&](const GameState& s) {
                double sum = n * s.defense_length;
                for (double g : gaps(s)) sum += g;
                return sum;
            };
            const double cc = crit.circumference;
            case_sum.check(detail::near(total(c1.state), cc, 1e-12 * cc) && detail::near(total(c2.state), cc, 1e-12 * cc),
                           tag);

            EngineOptions eo;
            eo.horizon = case_transition_time(crit);
            const SimOutcome o = simulate(crit, c1.state, constant_attacker(Direction::Positive), eo);
            conservation.check(o.stats.max_conservation_error <= 1e-12 * cc, tag + " shift");
            const GameState& end = o.trace.back().snapshot;
            const auto ga = gaps(end);
            const auto gb = gaps(c2.state);
            bool same = !o.verdict.breach && end.blocker == c2.state.blocker;
            for (std::size_t i = 0; same && i < ga.size(); ++i) same = detail::near(ga[i], gb[i], 1e-9);
            same = same && detail::near(offset_from_center(end, end.blocker, end.attacker.position),
                                        offset_from_center(c2.state, 0, c2.state.attacker.position), 1e-9);
            shift.check(same, tag);

            // the same play seen from the later configuration breaches t_{1,2} earlier
            ScenarioParams p = crit;
            p.circumference *= 1.5;
            const SimOutcome b1 = simulate(p, case1_config(p).state, constant_attacker(Direction::Positive));
            const SimOutcome b2 = simulate(p, case2_config(p).state, constant_attacker(Direction::Positive));
            shift.check(b1.verdict.breach && b2.verdict.breach &&
                            detail::near(b1.verdict.time - case_transition_time(p), b2.verdict.time,
                                         1e-12 * std::max(1.0, b1.verdict.time)),
                        tag + " breach shift");
        }

        for (double f : {1.0, 1.5}) {
            ScenarioParams p = crit;
            p.circumference *= f;
            const GameState s = case1_config(p).state;
            const GameState m = mirror_state(s);
            const double period = blocking_period(p, s);
            for (const std::vector<double>& sw : {std::vector<double>{}, std::vector<double>{0.5 * period}}) {
                EngineOptions eo;
                eo.horizon = sw.empty() ? 4.0 * period : sw.back() + 4.0 * period;
                const SimOutcome a = simulate(p, s, {Direction::Positive, sw}, eo);
                const SimOutcome b = simulate(p, m, {Direction::Negative, sw}, eo);
                const std::string why = detail::mirror_mismatch(a, b, p.circumference);
                mirror.check(why.empty(), detail::describe(p) + " " + why);
            }
        }
    }

    report.properties = {rearrangements, bracketing, monotone, boundary, conservation, critical,
                         above,          case_sum,   shift,    mirror,   oracle};
    return report;
}

inline void print_report(std::ostream& os, const VerifyReport& r)
{
    os << "verify seed=" << r.seed << " draws=" << r.draws << '\n';
    for (const auto& p : r.properties) {
        os << (p.ok() ? "PASS " : "FAIL ") << p.name << ' ' << p.passed << '/' << p.run << '\n';
        for (const auto& f : p.failures) os << "    " << f << '\n';
    }
    os << (r.ok() ? "all properties hold" : "property failures") << '\n';
}

} // namespace perimeter

#endif // PERIMETER_VERIFY_HPP
