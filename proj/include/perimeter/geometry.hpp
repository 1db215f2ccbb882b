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

#ifndef PERIMETER_GEOMETRY_HPP
#define PERIMETER_GEOMETRY_HPP

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace perimeter {

/// Absolute tolerance (length units) for containment and touch predicates.
inline constexpr double kEps = 1e-9;

class PerimeterError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public PerimeterError
{
public:
    using PerimeterError::PerimeterError;
};

/// Two defended intervals share more than a boundary point.
class CoordinationViolation : public PerimeterError
{
public:
    using PerimeterError::PerimeterError;
};

enum class Direction : int { Negative = -1, Positive = 1 };

constexpr int sign(Direction d) noexcept { return static_cast<int>(d); }
constexpr Direction operator-(Direction d) noexcept
{
    return d == Direction::Positive ? Direction::Negative : Direction::Positive;
}

inline Direction direction_from_int(int v)
{
    if (v == 1) return Direction::Positive;
    if (v == -1) return Direction::Negative;
    throw InvalidArgument("direction must be +1 or -1, got " + std::to_string(v));
}

/// Reduce `raw` modulo `circumference` into [0, circumference).
inline double wrap_value(double raw, double circumference)
{
    if (!(circumference > 0.0) || !std::isfinite(circumference))
        throw InvalidArgument("circumference must be positive and finite");
    if (!std::isfinite(raw))
        throw InvalidArgument("position must be finite");
    double r = std::fmod(raw, circumference);
    if (r < 0.0) r += circumference;
    // r + C can round up to C for tiny negative r
    if (r >= circumference) r = 0.0;
    return r;
}

/// A point on a circle of fixed circumference.
class CircPos
{
public:
    CircPos() = default;
    CircPos(double raw, double circumference)
        : value_(wrap_value(raw, circumference)), circumference_(circumference)
    {
    }

    double value() const noexcept { return value_; }
    double circumference() const noexcept { return circumference_; }

    CircPos moved(double signed_distance) const { return {value_ + signed_distance, circumference_}; }

    friend bool operator==(const CircPos&, const CircPos&) = default;

private:
    double value_ = 0.0;
    double circumference_ = 1.0;
};

/// Numbers in reports and CSV output: 12 significant digits.
inline std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline CircPos wrap(double raw, double circumference) { return {raw, circumference}; }

inline void require_same_circle(const CircPos& a, const CircPos& b)
{
    if (a.circumference() != b.circumference())
        throw InvalidArgument("positions lie on circles of different circumference");
}

/// Arc length in [0, C) travelled from `from` to `to` moving in `dir`.
inline double directed_arc(const CircPos& from, const CircPos& to, Direction dir)
{
    require_same_circle(from, to);
    const double raw = dir == Direction::Positive ? to.value() - from.value() : from.value() - to.value();
    return wrap_value(raw, from.circumference());
}

/// Closed arc that starts at `start` and extends `length` in the positive direction.
class CircInterval
{
public:
    CircInterval() = default;
    CircInterval(CircPos start, double length) : start_(start), length_(length)
    {
        if (!(length >= 0.0) || length > start.circumference() * (1.0 + 1e-12))
            throw InvalidArgument("interval length must lie in [0, circumference]");
        if (length_ > start.circumference()) length_ = start.circumference();
    }

    const CircPos& start() const noexcept { return start_; }
    double length() const noexcept { return length_; }
    double circumference() const noexcept { return start_.circumference(); }
    CircPos end() const { return start_.moved(length_); }
    CircPos center() const { return start_.moved(0.5 * length_); }
    bool whole_circle(double eps = kEps) const noexcept { return length_ >= circumference() - eps; }

private:
    CircPos start_;
    double length_ = 0.0;
};

inline bool contains(const CircInterval& interval, const CircPos& p, double eps = kEps)
{
    require_same_circle(interval.start(), p);
    if (!(eps >= 0.0)) throw InvalidArgument("containment tolerance must be non-negative");
    if (interval.whole_circle(eps)) return true;
    const double offset = directed_arc(interval.start(), p, Direction::Positive);
    return offset <= interval.length() + eps || offset >= interval.circumference() - eps;
}

/// Length of the undefended arc from the positive end of `a` to the start of `b`.
/// Touching intervals (within eps) give 0. Throws CoordinationViolation when
/// `b` starts inside `a`'s interior.
inline double gap_after(const CircInterval& a, const CircInterval& b, double eps = kEps)
{
    require_same_circle(a.start(), b.start());
    const double c = a.circumference();
    const double offset = directed_arc(a.start(), b.start(), Direction::Positive);
    // b starting just before a (offset near C), or running past a's start, overlaps too
    if (offset < a.length() - eps || (offset > c - eps && a.length() > eps) || offset + b.length() > c + eps)
        throw CoordinationViolation("defended intervals overlap (start offset " + std::to_string(offset) +
                                    ", length " + std::to_string(a.length()) + ")");
    if (offset <= a.length()) return 0.0;
    return offset - a.length();
}

} // namespace perimeter

#endif // PERIMETER_GEOMETRY_HPP
