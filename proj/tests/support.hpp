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

#ifndef PERIMETER_TESTS_SUPPORT_HPP
#define PERIMETER_TESTS_SUPPORT_HPP

#include "perimeter/model.hpp"

namespace perimeter::testing {

inline ScenarioParams params(double c, int n, double d, double v, double va) { return {c, n, d, v, va}; }

/// The three-defender example with C_max = 10.
inline ScenarioParams three_defenders(double c = 10.0) { return params(c, 3, 2.0, 1.0, 3.0); }

/// The two-defender example with C_max = 3.
inline ScenarioParams two_defenders(double c = 3.0) { return params(c, 2, 1.0, 1.0, 3.0); }

} // namespace perimeter::testing

#endif // PERIMETER_TESTS_SUPPORT_HPP
