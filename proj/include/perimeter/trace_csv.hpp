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

#ifndef PERIMETER_TRACE_CSV_HPP
#define PERIMETER_TRACE_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

#include "perimeter/engine.hpp"
#include "perimeter/model.hpp"

namespace perimeter {

inline std::string trace_csv_header(std::size_t n)
{
    std::string h = "time,event,subject,attacker_pos,attacker_dir";
    for (std::size_t i = 1; i <= n; ++i) h += ",def" + std::to_string(i) + "_pos,def" + std::to_string(i) + "_dir";
    for (std::size_t i = 0; i < n; ++i) h += ",gap_" + std::to_string(i + 1) + "_" + std::to_string((i + 1) % n + 1);
    return h;
}

/// One row per event; gaps are read off each snapshot.
inline void write_trace_csv(std::ostream& os, const std::vector<Event>& trace, std::size_t n)
{
    os << trace_csv_header(n) << '\n';
    for (const Event& e : trace) {
        const GameState& g = e.snapshot;
        os << format_number(e.time) << ',' << to_string(e.kind) << ',' << e.subject << ','
           << format_number(g.attacker.position.value()) << ',' << sign(g.attacker.direction);
        for (const auto& d : g.defenders) os << ',' << format_number(d.position.value()) << ',' << sign(d.direction);
        for (double gap : gaps(g)) os << ',' << format_number(gap);
        os << '\n';
    }
}

} // namespace perimeter

#endif // PERIMETER_TRACE_CSV_HPP
