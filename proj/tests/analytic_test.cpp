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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "perimeter/analytic.hpp"
#include "support.hpp"

namespace perimeter {
namespace {

using testing::params;
using testing::three_defenders;
using testing::two_defenders;

TEST(BlockingTime, Examples)
{
    EXPECT_DOUBLE_EQ(blocking_time(1, 2, 1), 1.0);
    EXPECT_DOUBLE_EQ(blocking_time(0.5, 3, 1), 0.25);
    EXPECT_DOUBLE_EQ(blocking_time(2, 2, 0), 1.0);
    EXPECT_THROW(blocking_time(1, 1, 1), InvalidArgument);
    EXPECT_THROW(blocking_time(-1, 3, 1), InvalidArgument);
}

TEST(GapClosable, Examples)
{
    EXPECT_TRUE(gap_closable(1, 2, 1, 1));
    EXPECT_FALSE(gap_closable(0.9, 2, 1, 1));
    EXPECT_TRUE(gap_closable(0, 0, 0, 0));
    EXPECT_FALSE(gap_closable(5, 1, 0, 0));
}

TEST(Gamma, Examples)
{
    EXPECT_DOUBLE_EQ(gamma(1, 3), 1.0);
    EXPECT_DOUBLE_EQ(gamma(0, 7), 0.0);
    EXPECT_DOUBLE_EQ(gamma(1, 2), 2.0);
    EXPECT_THROW(gamma(2, 2), InvalidArgument);
    EXPECT_THROW(gamma(-1, 2), InvalidArgument);
}

TEST(OptimalGap, Examples)
{
    EXPECT_DOUBLE_EQ(optimal_gap(three_defenders()), 2.0);
    EXPECT_DOUBLE_EQ(optimal_gap(params(10, 3, 1.7, 0, 3)), 0.0);
    EXPECT_DOUBLE_EQ(optimal_gap(params(10, 3, 1, 1, 2)), 2.0);
}

TEST(MaxCircumference, Examples)
{
    EXPECT_DOUBLE_EQ(max_circumference(three_defenders()), 10.0);
    EXPECT_DOUBLE_EQ(max_circumference(params(10, 1, 2, 1, 3)), 2.0);
    EXPECT_DOUBLE_EQ(max_circumference(params(10, 1, 2, 0.3, 9)), 2.0);
    EXPECT_DOUBLE_EQ(max_circumference(two_defenders()), 3.0);
}

TEST(AttackerWins, StrictBoundary)
{
    const auto above = attacker_wins(three_defenders(10.1));
    EXPECT_TRUE(above.attacker_wins);
    EXPECT_NEAR(above.margin, 0.1, 1e-12);
    const auto at = attacker_wins(three_defenders(10.0));
    EXPECT_FALSE(at.attacker_wins);
    EXPECT_DOUBLE_EQ(at.margin, 0.0);
    EXPECT_FALSE(attacker_wins(params(6, 3, 2, 0, 1)).attacker_wins);
    EXPECT_TRUE(attacker_wins(three_defenders(std::nextafter(10.0, 11.0))).attacker_wins);
}

TEST(MinDefenders, Examples)
{
    EXPECT_EQ(min_defenders(10, 2, 1, 3), 3);
    EXPECT_EQ(min_defenders(10, 1, 1, 3), 6);
    EXPECT_EQ(min_defenders(1.5, 2, 1, 3), 1);
    EXPECT_EQ(min_defenders(2, 2, 1, 3), 1);
    // exact integer threshold is not over-counted
    EXPECT_EQ(min_defenders(9, 1, 1, 3), 5);
}

TEST(CriticalSpeedRatio, Examples)
{
    EXPECT_DOUBLE_EQ(critical_speed_ratio(10, 2, 3), 3.0);
    EXPECT_THROW(critical_speed_ratio(10, 2, 5), NoFiniteThreshold);
    EXPECT_DOUBLE_EQ(critical_speed_ratio(4, 1, 2), 2.0);
}

TEST(MaxDefenseThreshold, Examples)
{
    EXPECT_DOUBLE_EQ(max_defense_threshold(10, 3, 1, 3), 2.0);
    EXPECT_DOUBLE_EQ(max_defense_threshold(10, 1, 1, 3), 10.0);
    EXPECT_DOUBLE_EQ(max_defense_threshold(12, 4, 1, 3), 12.0 / 7.0);
}

TEST(CaseTransitionTime, Examples)
{
    EXPECT_DOUBLE_EQ(case_transition_time(three_defenders()), 0.5);
    EXPECT_DOUBLE_EQ(case_transition_time(params(10, 3, 1, 1, 2)), 0.5);
    const auto p = params(10, 3, 2, 0, 4);
    EXPECT_DOUBLE_EQ(case_transition_time(p), 0.25);
    // the gap form agrees whenever defenders move
    const auto q = three_defenders();
    EXPECT_DOUBLE_EQ(case_transition_time(q), 0.5 * optimal_gap(q) / (2.0 * q.defender_speed));
}

TEST(Analyze, ReportsEveryQuantity)
{
    const AnalyticReport r = analyze(three_defenders());
    EXPECT_DOUBLE_EQ(r.gamma, 1.0);
    EXPECT_DOUBLE_EQ(r.optimal_gap, 2.0);
    EXPECT_DOUBLE_EQ(r.max_circumference, 10.0);
    EXPECT_FALSE(r.attacker_wins);
    EXPECT_EQ(r.min_defenders, 3);
    EXPECT_DOUBLE_EQ(r.max_defense_length_threshold, 2.0);
    ASSERT_TRUE(r.critical_speed_ratio);
    EXPECT_DOUBLE_EQ(*r.critical_speed_ratio, 3.0);
    EXPECT_DOUBLE_EQ(r.case_transition_time, 0.5);
    EXPECT_FALSE(analyze(params(10, 5, 2, 1, 3)).critical_speed_ratio);
    EXPECT_THROW(analyze(params(10, 3, 2, 3, 3)), InvalidArgument);
}

TEST(CaseConfigs, CaseOneTwoDefenders)
{
    const GameState s = case1_config(two_defenders()).state;
    EXPECT_DOUBLE_EQ(defended_interval(s, 0).start().value(), 0.0);
    EXPECT_DOUBLE_EQ(defended_interval(s, 1).start().value(), 2.0);
    EXPECT_DOUBLE_EQ(s.attacker.position.value(), 0.0);
    EXPECT_EQ(s.blocker, 0u);
    EXPECT_EQ(s.defenders[0].direction, Direction::Positive);
    EXPECT_EQ(s.defenders[1].direction, Direction::Negative);
}

TEST(CaseConfigs, CaseTwoPutsAttackerAtCenter)
{
    const GameState s = case2_config(three_defenders()).state;
    EXPECT_DOUBLE_EQ(s.attacker.position.value(), s.defenders[0].position.value());
    const GameState one = case2_config(params(5, 1, 2, 1, 3)).state;
    EXPECT_DOUBLE_EQ(one.attacker.position.value(), one.defenders[0].position.value());
}

TEST(CaseConfigs, SingleDefenderFullCoverage)
{
    const Configuration c = case1_config(params(2, 1, 2, 1, 3));
    EXPECT_TRUE(c.warnings.empty());
    EXPECT_DOUBLE_EQ(c.state.attacker.position.value(), 0.0);
    EXPECT_TRUE(defended_interval(c.state, 0).whole_circle());
}

TEST(CaseConfigs, WarnsAboveCriticalAndWhenSaturated)
{
    EXPECT_EQ(case1_config(three_defenders(10.1)).warnings.size(), 1u);
    const Configuration sat = case1_config(params(5, 3, 2, 1, 3));
    ASSERT_EQ(sat.warnings.size(), 1u);
    EXPECT_NEAR(sat.state.defense_length, 5.0 / 3.0, 1e-15);
    for (double g : gaps(sat.state)) EXPECT_NEAR(g, 0.0, 1e-12);
}

TEST(CaseConfigs, BothSumToCircumference)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const int n = 2 + static_cast<int>(u(rng) * 7);
        const double v = 1.0 - u(rng);
        auto p = params(0, n, 1.0 - u(rng), v, v * (1.0 + 4.0 * (1.0 - u(rng))));
        p.circumference = max_circumference(p) * (0.8 + 0.2 * u(rng));
        if (p.full_coverage()) continue;
        for (auto kind : {InitialConfig::Case1, InitialConfig::Case2}) {
            const GameState s = make_config(p, kind).state;
            double total = n * s.defense_length;
            for (double g : gaps(s)) total += g;
            EXPECT_NEAR(total, p.circumference, 1e-12 * p.circumference);
        }
    }
}

class Rearrangements : public ::testing::TestWithParam<double>
{
};

TEST_P(Rearrangements, AllFormsAgreeWithCircumferenceForm)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        const int n = 1 + static_cast<int>(u(rng) * 8);
        const double v = u(rng) < 0.1 ? 0.0 : 1.0 - u(rng);
        auto p = params(0, n, 1.0 - u(rng), v, (v > 0 ? v : 1.0) * (1.0 + 4.0 * (1.0 - u(rng))));
        p.circumference = max_circumference(p) * GetParam();
        const bool wins = attacker_wins(p).attacker_wins;
        const auto w = win_inequalities(p);
        EXPECT_EQ(w.by_circumference, wins);
        EXPECT_EQ(w.by_defense_length, wins);
        EXPECT_EQ(w.by_gamma, wins);
        EXPECT_EQ(w.by_speed_ratio, wins);
    }
}

INSTANTIATE_TEST_SUITE_P(AwayFromBoundary, Rearrangements, ::testing::Values(0.5, 0.9, 1.01, 1.5, 3.0));

TEST(Monotonicity, VerdictMovesOneWayInEachParameter)
{
    auto wins = [](ScenarioParams p) { return attacker_wins(p).attacker_wins; };
    const auto base = three_defenders();
    int prev = -1;
    for (double c = 8.0; c <= 12.0; c += 0.25) {
        auto p = base;
        p.circumference = c;
        const int w = wins(p);
        EXPECT_GE(w, prev);
        prev = w;
    }
    prev = 2;
    for (int n = 1; n <= 8; ++n) {
        auto p = base;
        p.defender_count = n;
        const int w = wins(p);
        EXPECT_LE(w, prev);
        prev = w;
    }
    prev = -1;
    for (double va = 1.1; va <= 6.0; va += 0.1) {
        auto p = base;
        p.attacker_speed = va;
        const int w = wins(p);
        EXPECT_GE(w, prev);
        prev = w;
    }
    prev = 2;
    for (double v = 0.0; v < 2.9; v += 0.1) {
        auto p = base;
        p.defender_speed = v;
        const int w = wins(p);
        EXPECT_LE(w, prev);
        prev = w;
    }
    prev = 2;
    for (double d = 0.5; d <= 4.0; d += 0.1) {
        auto p = base;
        p.defense_length = d;
        const int w = wins(p);
        EXPECT_LE(w, prev);
        prev = w;
    }
}

TEST(MinDefenders, Brackets)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double v = 1.0 - u(rng);
        auto p = params(50.0 * (1.0 - u(rng)), 1, 1.0 - u(rng), v, v * (1.0 + 4.0 * (1.0 - u(rng))));
        const int n = min_defenders(p.circumference, p.defense_length, p.defender_speed, p.attacker_speed);
        p.defender_count = n;
        EXPECT_FALSE(attacker_wins(p).attacker_wins);
        if (n > 1) {
            p.defender_count = n - 1;
            EXPECT_TRUE(attacker_wins(p).attacker_wins);
        }
    }
}

TEST(Degenerate, SingleDefenderAndStaticDefenders)
{
    EXPECT_DOUBLE_EQ(max_circumference(params(9, 1, 0.7, 0.4, 1.3)), 0.7);
    EXPECT_DOUBLE_EQ(max_circumference(params(9, 4, 0.7, 0.0, 1.3)), 2.8);
}

} // namespace
} // namespace perimeter
