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

#include <cstdlib>
#include <string_view>

#include "qsmc/kernels.hpp"

namespace qsmc::kernels {

const KernelSet &active_kernels() {
    static const KernelSet &chosen = [] () -> const KernelSet & {
        const char *pin = std::getenv("QSMC_ISA");
        if (pin != nullptr && std::string_view(pin) == "scalar") return scalar_kernels();
        if (const KernelSet *avx2 = avx2_kernels()) return *avx2;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace qsmc::kernels
