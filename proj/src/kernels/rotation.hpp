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

#include <cmath>

namespace qsmc::kernels::detail {

// Per-lane rotation parameters: unit axis, sin and cos of the angle. A zero
// field yields k = 0, sin = 0, cos = 1 so the rotation formula reduces to r.
struct RotationParams {
    double kx, ky, kz, s, c;
};

inline RotationParams rotation_params(double cx, double cy, double cz, double t) {
    double n = std::sqrt((cx * cx + cy * cy) + cz * cz);
    double inv = n > 0.0 ? 1.0 / n : 0.0;
    double angle = n * t;
    return {cx * inv, cy * inv, cz * inv, std::sin(angle), std::cos(angle)};
}

}  // namespace qsmc::kernels::detail
