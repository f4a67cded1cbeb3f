// SPDX-License-Identifier: Apache-2.0
//
// maiscc: movable-antenna multi-AAV sensing/communication/computation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Umbrella header for the numerical core. Configuration parsing
// (maiscc/config.hpp) additionally needs yaml-cpp.

#pragma once

#include "maiscc/csv.hpp"
#include "maiscc/geometry_channel.hpp"
#include "maiscc/harness.hpp"
#include "maiscc/inner_solver.hpp"
#include "maiscc/oracles.hpp"
#include "maiscc/pso.hpp"
#include "maiscc/rng.hpp"
#include "maiscc/signal_metrics.hpp"
#include "maiscc/types.hpp"
#include "maiscc/validation.hpp"
