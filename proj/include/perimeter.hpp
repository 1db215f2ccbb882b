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

#ifndef PERIMETER_HPP
#define PERIMETER_HPP

#include "perimeter/geometry.hpp"
#include "perimeter/model.hpp"
#include "perimeter/analytic.hpp"
#include "perimeter/strategy.hpp"
#include "perimeter/engine.hpp"
#include "perimeter/fixed_step.hpp"
#include "perimeter/brute_force.hpp"
#include "perimeter/sweep.hpp"
#include "perimeter/trace_csv.hpp"
#include "perimeter/scenario_io.hpp"
#include "perimeter/verify.hpp"

#endif // PERIMETER_HPP
