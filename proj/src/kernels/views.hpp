// SPDX-License-Identifier: Apache-2.0
//
// fluid-mimo: statistical-CSI rate maximization for fluid-antenna MIMO links
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

#pragma once

// Plain views handed to the per-ISA kernels. This header deliberately pulls in
// nothing with inline code (no Eigen, no containers): the ISA-specific
// translation units are compiled with extra target flags, and any shared
// inline function they instantiated could be picked by the linker for the
// whole program.

#include <cstddef>

namespace fluid_mimo::kernels::detail {

// Batch entry (i, j) of lane s: re[(i * cols + j) * stride + s].
struct BatchView {
    int rows;
    int cols;
    std::size_t stride;
    double* re;
    double* im;
};

struct ConstBatchView {
    int rows;
    int cols;
    std::size_t stride;
    const double* re;
    const double* im;
};

// Small dense row-major matrix: entry (i, j) at re[i * cols + j].
struct DenseView {
    int rows;
    int cols;
    const double* re;
    const double* im;
};

void multiply_left_scalar(DenseView a, ConstBatchView x, BatchView out);
void hermitian_sandwich_scalar(ConstBatchView x, DenseView p, BatchView out);
void log2det_identity_plus_scalar(ConstBatchView w, double scale, double* out);

#if defined(FLUID_MIMO_HAVE_AVX2)
void multiply_left_avx2(DenseView a, ConstBatchView x, BatchView out);
void hermitian_sandwich_avx2(ConstBatchView x, DenseView p, BatchView out);
void log2det_identity_plus_avx2(ConstBatchView w, double scale, double* out);
#endif

}  // namespace fluid_mimo::kernels::detail
