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

#include "qsmc/kernels.hpp"
#include "rotation.hpp"

namespace qsmc::kernels {
namespace {

void rk4_step_scalar(BlochLanes r, CoeffLanes c, double dt) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        BlochVector next = rk4_step({r.x[i], r.y[i], r.z[i]}, {c.cx[i], c.cy[i], c.cz[i]}, dt);
        r.x[i] = next.x;
        r.y[i] = next.y;
        r.z[i] = next.z;
    }
}

void renormalize_scalar(BlochLanes r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        BlochVector next = renormalized({r.x[i], r.y[i], r.z[i]});
        r.x[i] = next.x;
        r.y[i] = next.y;
        r.z[i] = next.z;
    }
}

void rotate_scalar(BlochLanes r, CoeffLanes c, double t) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        auto p = detail::rotation_params(c.cx[i], c.cy[i], c.cz[i], t);
        double x = r.x[i], y = r.y[i], z = r.z[i];
        double kr = (p.kx * x + p.ky * y) + p.kz * z;
        double w = kr * (1.0 - p.c);
        // r cos + (k x r) sin + k (k.r)(1 - cos)
        r.x[i] = (x * p.c + (p.ky * z - p.kz * y) * p.s) + p.kx * w;
        r.y[i] = (y * p.c + (p.kz * x - p.kx * z) * p.s) + p.ky * w;
        r.z[i] = (z * p.c + (p.kx * y - p.ky * x) * p.s) + p.kz * w;
    }
}

}  // namespace

const KernelSet &scalar_kernels() {
    static const KernelSet set{Isa::scalar, "scalar", rk4_step_scalar, renormalize_scalar,
                               rotate_scalar};
    return set;
}

}  // namespace qsmc::kernels
