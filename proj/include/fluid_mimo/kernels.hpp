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

// Batched small complex matrix kernels for the Monte Carlo rate estimator.
//
// Matrices of a batch are stored structure-of-arrays with real and imaginary
// parts split, so that one SIMD register holds the same entry of several
// samples. Every kernel has a portable scalar reference and an AVX2 variant;
// the variant is picked at runtime. Both variants perform the same IEEE
// operations in the same order (no FMA), so their results agree bit for bit.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fluid_mimo/types.hpp"

namespace fluid_mimo::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

// Compiled in and supported by the running CPU.
bool available(Isa isa);

// Widest available variant. FLUID_MIMO_SIMD=scalar|avx2 overrides the choice.
Isa preferred_isa();

inline constexpr std::size_t lane_width = 4;

// `count` complex rows x cols matrices. Entry (i, j) of sample s lives at
// index (i * cols + j) * stride + s, with stride = count rounded up to lane_width.
// Padding lanes are zero-initialized and processed like real samples.
class ComplexBatch {
public:
    ComplexBatch() = default;
    ComplexBatch(int rows, int cols, std::size_t count);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t count() const { return count_; }
    std::size_t stride() const { return stride_; }

    double* re(int i, int j) { return re_.data() + offset(i, j); }
    double* im(int i, int j) { return im_.data() + offset(i, j); }
    const double* re(int i, int j) const { return re_.data() + offset(i, j); }
    const double* im(int i, int j) const { return im_.data() + offset(i, j); }

    cdouble get(int i, int j, std::size_t s) const { return {re(i, j)[s], im(i, j)[s]}; }
    void set(int i, int j, std::size_t s, cdouble v) {
        re(i, j)[s] = v.real();
        im(i, j)[s] = v.imag();
    }

    CMatrix matrix(std::size_t s) const;
    void set_matrix(std::size_t s, const CMatrix& m);

private:
    std::size_t offset(int i, int j) const {
        return static_cast<std::size_t>(i * cols_ + j) * stride_;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::size_t count_ = 0;
    std::size_t stride_ = 0;
    std::vector<double> re_;
    std::vector<double> im_;
};

// out_s = a * x_s. `out` must be a.rows() x x.cols() with the same stride.
void multiply_left(Isa isa, const CMatrix& a, const ComplexBatch& x, ComplexBatch& out);

// out_s = x_s p x_s^H for Hermitian p; only the lower triangle of out is written.
void hermitian_sandwich(Isa isa, const ComplexBatch& x, const CMatrix& p, ComplexBatch& out);

// out[s] = log2 det(I + scale * w_s) from the lower triangle of Hermitian PSD w_s,
// via an LDL^H factorization. A non-positive pivot yields NaN for that sample.
// out.size() must be at least w.stride().
void log2det_identity_plus(Isa isa, const ComplexBatch& w, double scale, std::span<double> out);

}  // namespace fluid_mimo::kernels
