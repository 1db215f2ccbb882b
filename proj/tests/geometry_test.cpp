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
#include <vector>

#include <gtest/gtest.h>

#include "perimeter/geometry.hpp"

namespace perimeter {
namespace {

TEST(Wrap, ReducesModuloCircumference)
{
    EXPECT_DOUBLE_EQ(wrap(12.0, 10.0).value(), 2.0);
    EXPECT_DOUBLE_EQ(wrap(-1.0, 10.0).value(), 9.0);
    EXPECT_DOUBLE_EQ(wrap(10.0, 10.0).value(), 0.0);
    EXPECT_DOUBLE_EQ(wrap(-1e-300, 10.0).value(), 0.0);
}

TEST(Wrap, RejectsBadInput)
{
    EXPECT_THROW(wrap(1.0, 0.0), InvalidArgument);
    EXPECT_THROW(wrap(1.0, -3.0), InvalidArgument);
    EXPECT_THROW(wrap(std::nan(""), 10.0), InvalidArgument);
    EXPECT_THROW(wrap(INFINITY, 10.0), InvalidArgument);
}

TEST(Wrap, IsIdempotent)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e4, 1e4);
    for (int i = 0; i < 1000; ++i) {
        const double c = 0.1 + std::abs(u(rng));
        const double once = wrap(u(rng), c).value();
        EXPECT_EQ(wrap(once, c).value(), once);
        EXPECT_GE(once, 0.0);
        EXPECT_LT(once, c);
    }
}

TEST(DirectedArc, Examples)
{
    const double c = 10.0;
    EXPECT_DOUBLE_EQ(directed_arc(wrap(2, c), wrap(5, c), Direction::Positive), 3.0);
    EXPECT_DOUBLE_EQ(directed_arc(wrap(2, c), wrap(5, c), Direction::Negative), 7.0);
    EXPECT_DOUBLE_EQ(directed_arc(wrap(4, c), wrap(4, c), Direction::Positive), 0.0);
    EXPECT_DOUBLE_EQ(directed_arc(wrap(4, c), wrap(4, c), Direction::Negative), 0.0);
    EXPECT_THROW(directed_arc(wrap(1, 10), wrap(1, 11), Direction::Positive), InvalidArgument);
}

TEST(DirectedArc, ForwardAndBackSumToCircumference)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double c = 0.5 + 20.0 * u(rng);
        const CircPos a = wrap(c * u(rng), c);
        const CircPos b = wrap(c * u(rng), c);
        if (a == b) continue;
        EXPECT_NEAR(directed_arc(a, b, Direction::Positive) + directed_arc(b, a, Direction::Positive), c, 1e-12 * c);
    }
}

TEST(Contains, ClosedEndpointsAndTolerance)
{
    const CircInterval unit(wrap(0, 10), 1.0);
    EXPECT_TRUE(contains(unit, wrap(1.0, 10), 0.0));
    EXPECT_TRUE(contains(unit, wrap(0.0, 10), 0.0));
    EXPECT_TRUE(contains(unit, wrap(1.0 + 1e-12, 10), 1e-9));
    EXPECT_FALSE(contains(unit, wrap(1.1, 10), 1e-9));
    EXPECT_FALSE(contains(unit, wrap(9.9, 10), 1e-9));
}

TEST(Contains, WrappedInterval)
{
    const CircInterval wrapped(wrap(8, 10), 3.0);
    EXPECT_TRUE(contains(wrapped, wrap(0.5, 10), 0.0));
    EXPECT_TRUE(contains(wrapped, wrap(9.0, 10), 0.0));
    EXPECT_TRUE(contains(wrapped, wrap(1.0, 10), 0.0));
    EXPECT_FALSE(contains(wrapped, wrap(5.0, 10), 0.0));
}

TEST(Contains, RejectsNegativeTolerance)
{
    EXPECT_THROW(contains(CircInterval(wrap(0, 10), 1.0), wrap(0.5, 10), -1e-9), InvalidArgument);
}

TEST(Contains, WholeCircle)
{
    const CircInterval all(wrap(3, 10), 10.0);
    EXPECT_TRUE(all.whole_circle());
    EXPECT_TRUE(contains(all, wrap(7.7, 10), 0.0));
}

TEST(Interval, RejectsBadLength)
{
    EXPECT_THROW(CircInterval(wrap(0, 10), -1.0), InvalidArgument);
    EXPECT_THROW(CircInterval(wrap(0, 10), 11.0), InvalidArgument);
}

TEST(GapAfter, Examples)
{
    const double c = 10.0;
    EXPECT_DOUBLE_EQ(gap_after({wrap(0, c), 1}, {wrap(3, c), 1}), 2.0);
    EXPECT_DOUBLE_EQ(gap_after({wrap(0, c), 1}, {wrap(1, c), 1}), 0.0);
    EXPECT_NEAR(gap_after({wrap(8, c), 1}, {wrap(1, c), 1}), 2.0, 1e-15);
}

TEST(GapAfter, TouchWithinToleranceIsZero)
{
    EXPECT_DOUBLE_EQ(gap_after({wrap(0, 10), 1}, {wrap(1.0 - 1e-12, 10), 1}), 0.0);
}

TEST(GapAfter, OverlapIsCoordinationViolation)
{
    EXPECT_THROW(gap_after({wrap(0, 10), 2}, {wrap(1, 10), 2}), CoordinationViolation);
    EXPECT_THROW(gap_after({wrap(1, 10), 2}, {wrap(0.5, 10), 2}), CoordinationViolation);
}

TEST(GapAfter, LengthsPlusGapsSumToCircumference)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(u(rng) * 9);
        const double c = 1.0 + 50.0 * u(rng);
        const double d = c / n * (0.05 + 0.9 * u(rng));
        // random spacings that sum to the free length
        std::vector<double> w(n);
        double total = 0.0;
        for (auto& x : w) total += (x = u(rng) + 1e-3);
        std::vector<CircInterval> iv;
        double at = c * u(rng);
        for (int i = 0; i < n; ++i) {
            iv.emplace_back(wrap(at, c), d);
            at += d + (c - n * d) * w[i] / total;
        }
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += iv[i].length() + (n == 1 ? c - d : gap_after(iv[i], iv[(i + 1) % n]));
        EXPECT_NEAR(sum, c, 1e-12 * c);
    }
}

TEST(Direction, SignAndNegation)
{
    EXPECT_EQ(sign(Direction::Positive), 1);
    EXPECT_EQ(sign(-Direction::Positive), -1);
    EXPECT_EQ(direction_from_int(-1), Direction::Negative);
    EXPECT_THROW(direction_from_int(0), InvalidArgument);
}

} // namespace
} // namespace perimeter
