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

#include "qsmc/measurement.hpp"

#include <algorithm>

namespace qsmc {

std::pair<double, double> born_probabilities(const PureState &state) {
    double p1 = std::clamp(state.p1(), 0.0, 1.0);
    return {1.0 - p1, p1};
}

std::pair<MeasurementRecord, PureState> measure_z(const PureState &state, RngStream &rng,
                                                  double t) {
    double p_one = born_probabilities(state).second;
    Outcome outcome = rng.uniform() < p_one ? Outcome::one : Outcome::zero;
    PureState collapsed = outcome == Outcome::one ? PureState::one() : PureState::zero();
    return {MeasurementRecord{t, outcome, p_one}, collapsed};
}

}  // namespace qsmc
