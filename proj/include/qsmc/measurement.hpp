// Copyright 2026 The qsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <utility>

#include "qsmc/bloch.hpp"
#include "qsmc/rng.hpp"

namespace qsmc {

/// sigma_z outcome: zero is |0> (eigenvalue +1), one is |1> (eigenvalue -1).
enum class Outcome { zero, one };

struct MeasurementRecord {
    double t = 0.0;
    Outcome outcome = Outcome::zero;
    /// |<1|psi>|^2 just before the measurement.
    double pre_failure_prob = 0.0;
};

/// (|a0|^2, |a1|^2).
std::pair<double, double> born_probabilities(const PureState &state);

/// Projective sigma_z measurement at time t. Consumes one draw from `rng` and
/// returns exactly |0> or |1>.
std::pair<MeasurementRecord, PureState> measure_z(const PureState &state, RngStream &rng,
                                                  double t = 0.0);

}  // namespace qsmc
