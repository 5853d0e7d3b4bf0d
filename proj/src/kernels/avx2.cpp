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

#if defined(__x86_64__) || defined(_M_X64)
#define QSMC_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#else
#define QSMC_HAVE_AVX2_KERNELS 0
#endif

namespace qsmc::kernels {

#if QSMC_HAVE_AVX2_KERNELS
namespace {

#define QSMC_AVX2 __attribute__((target("avx2")))

// c x r, component-wise, in the same order as the scalar reference.
QSMC_AVX2 inline void cross4(__m256d cx, __m256d cy, __m256d cz, __m256d x, __m256d y, __m256d z,
                             __m256d &ox, __m256d &oy, __m256d &oz) {
    ox = _mm256_sub_pd(_mm256_mul_pd(cy, z), _mm256_mul_pd(cz, y));
    oy = _mm256_sub_pd(_mm256_mul_pd(cz, x), _mm256_mul_pd(cx, z));
    oz = _mm256_sub_pd(_mm256_mul_pd(cx, y), _mm256_mul_pd(cy, x));
}

QSMC_AVX2 inline __m256d axpy(__m256d a, __m256d h, __m256d k) {
    return _mm256_add_pd(a, _mm256_mul_pd(h, k));
}

// ((k1 + 2 k2) + 2 k3) + k4
QSMC_AVX2 inline __m256d combine(__m256d k1, __m256d k2, __m256d k3, __m256d k4) {
    const __m256d two = _mm256_set1_pd(2.0);
    return _mm256_add_pd(
        _mm256_add_pd(_mm256_add_pd(k1, _mm256_mul_pd(two, k2)), _mm256_mul_pd(two, k3)), k4);
}

QSMC_AVX2 void rk4_step_avx2(BlochLanes r, CoeffLanes c, double dt) {
    const std::size_t n = r.size();
    const __m256d h = _mm256_set1_pd(dt);
    const __m256d hh = _mm256_set1_pd(0.5 * dt);
    const __m256d h6 = _mm256_set1_pd(dt / 6.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(&r.x[i]);
        __m256d y = _mm256_loadu_pd(&r.y[i]);
        __m256d z = _mm256_loadu_pd(&r.z[i]);
        __m256d cx = _mm256_loadu_pd(&c.cx[i]);
        __m256d cy = _mm256_loadu_pd(&c.cy[i]);
        __m256d cz = _mm256_loadu_pd(&c.cz[i]);
        __m256d k1x, k1y, k1z, k2x, k2y, k2z, k3x, k3y, k3z, k4x, k4y, k4z;
        cross4(cx, cy, cz, x, y, z, k1x, k1y, k1z);
        cross4(cx, cy, cz, axpy(x, hh, k1x), axpy(y, hh, k1y), axpy(z, hh, k1z), k2x, k2y, k2z);
        cross4(cx, cy, cz, axpy(x, hh, k2x), axpy(y, hh, k2y), axpy(z, hh, k2z), k3x, k3y, k3z);
        cross4(cx, cy, cz, axpy(x, h, k3x), axpy(y, h, k3y), axpy(z, h, k3z), k4x, k4y, k4z);
        _mm256_storeu_pd(&r.x[i], axpy(x, h6, combine(k1x, k2x, k3x, k4x)));
        _mm256_storeu_pd(&r.y[i], axpy(y, h6, combine(k1y, k2y, k3y, k4y)));
        _mm256_storeu_pd(&r.z[i], axpy(z, h6, combine(k1z, k2z, k3z, k4z)));
    }
    for (; i < n; ++i) {
        BlochVector next = rk4_step({r.x[i], r.y[i], r.z[i]}, {c.cx[i], c.cy[i], c.cz[i]}, dt);
        r.x[i] = next.x;
        r.y[i] = next.y;
        r.z[i] = next.z;
    }
}

QSMC_AVX2 void renormalize_avx2(BlochLanes r) {
    const std::size_t n = r.size();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(&r.x[i]);
        __m256d y = _mm256_loadu_pd(&r.y[i]);
        __m256d z = _mm256_loadu_pd(&r.z[i]);
        __m256d sq = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)),
                                   _mm256_mul_pd(z, z));
        __m256d inv = _mm256_div_pd(one, _mm256_sqrt_pd(sq));
        _mm256_storeu_pd(&r.x[i], _mm256_mul_pd(x, inv));
        _mm256_storeu_pd(&r.y[i], _mm256_mul_pd(y, inv));
        _mm256_storeu_pd(&r.z[i], _mm256_mul_pd(z, inv));
    }
    for (; i < n; ++i) {
        BlochVector next = renormalized({r.x[i], r.y[i], r.z[i]});
        r.x[i] = next.x;
        r.y[i] = next.y;
        r.z[i] = next.z;
    }
}

QSMC_AVX2 void rotate_avx2(BlochLanes r, CoeffLanes c, double t) {
    const std::size_t n = r.size();
    const __m256d one = _mm256_set1_pd(1.0);
    alignas(32) double kx[4], ky[4], kz[4], s[4], co[4];
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // sin/cos stay scalar; the combination is vectorized.
        for (int j = 0; j < 4; ++j) {
            auto p = detail::rotation_params(c.cx[i + j], c.cy[i + j], c.cz[i + j], t);
            kx[j] = p.kx;
            ky[j] = p.ky;
            kz[j] = p.kz;
            s[j] = p.s;
            co[j] = p.c;
        }
        __m256d vkx = _mm256_load_pd(kx), vky = _mm256_load_pd(ky), vkz = _mm256_load_pd(kz);
        __m256d vs = _mm256_load_pd(s), vc = _mm256_load_pd(co);
        __m256d x = _mm256_loadu_pd(&r.x[i]);
        __m256d y = _mm256_loadu_pd(&r.y[i]);
        __m256d z = _mm256_loadu_pd(&r.z[i]);
        __m256d kr = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(vkx, x), _mm256_mul_pd(vky, y)),
                                   _mm256_mul_pd(vkz, z));
        __m256d w = _mm256_mul_pd(kr, _mm256_sub_pd(one, vc));
        __m256d ox, oy, oz;
        cross4(vkx, vky, vkz, x, y, z, ox, oy, oz);
        _mm256_storeu_pd(&r.x[i], _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(x, vc), _mm256_mul_pd(ox, vs)),
                                                _mm256_mul_pd(vkx, w)));
        _mm256_storeu_pd(&r.y[i], _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(y, vc), _mm256_mul_pd(oy, vs)),
                                                _mm256_mul_pd(vky, w)));
        _mm256_storeu_pd(&r.z[i], _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(z, vc), _mm256_mul_pd(oz, vs)),
                                                _mm256_mul_pd(vkz, w)));
    }
    if (i < n) {
        BlochLanes tail{r.x.subspan(i), r.y.subspan(i), r.z.subspan(i)};
        CoeffLanes ctail{c.cx.subspan(i), c.cy.subspan(i), c.cz.subspan(i)};
        scalar_kernels().rotate(tail, ctail, t);
    }
}

#undef QSMC_AVX2

}  // namespace

const KernelSet *avx2_kernels() {
    static const bool supported = __builtin_cpu_supports("avx2");
    static const KernelSet set{Isa::avx2, "avx2", rk4_step_avx2, renormalize_avx2, rotate_avx2};
    return supported ? &set : nullptr;
}

#else

const KernelSet *avx2_kernels() { return nullptr; }

#endif

}  // namespace qsmc::kernels
