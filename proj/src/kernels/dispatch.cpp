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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "fluid_mimo/kernels.hpp"
#include "views.hpp"

namespace fluid_mimo::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool available(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(FLUID_MIMO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa preferred_isa() {
    if (const char* env = std::getenv("FLUID_MIMO_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && available(Isa::avx2)) return Isa::avx2;
    }
    return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

ComplexBatch::ComplexBatch(int rows, int cols, std::size_t count)
    : rows_(rows),
      cols_(cols),
      count_(count),
      stride_((count + lane_width - 1) / lane_width * lane_width),
      re_(static_cast<std::size_t>(rows * cols) * stride_, 0.0),
      im_(static_cast<std::size_t>(rows * cols) * stride_, 0.0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("ComplexBatch: negative dimension");
}

CMatrix ComplexBatch::matrix(std::size_t s) const {
    CMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = get(i, j, s);
    return m;
}

void ComplexBatch::set_matrix(std::size_t s, const CMatrix& m) {
    if (m.rows() != rows_ || m.cols() != cols_) throw std::invalid_argument("ComplexBatch: matrix size mismatch");
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) set(i, j, s, m(i, j));
}

namespace {

// Row-major split copy of a small dense matrix.
struct DenseCopy {
    explicit DenseCopy(const CMatrix& m)
        : rows(static_cast<int>(m.rows())),
          cols(static_cast<int>(m.cols())),
          re(static_cast<std::size_t>(m.size())),
          im(static_cast<std::size_t>(m.size())) {
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) {
                re[static_cast<std::size_t>(i * cols + j)] = m(i, j).real();
                im[static_cast<std::size_t>(i * cols + j)] = m(i, j).imag();
            }
        }
    }
    detail::DenseView view() const { return {rows, cols, re.data(), im.data()}; }

    int rows;
    int cols;
    std::vector<double> re;
    std::vector<double> im;
};

detail::ConstBatchView view(const ComplexBatch& b) {
    return {b.rows(), b.cols(), b.stride(), b.re(0, 0), b.im(0, 0)};
}

detail::BatchView view(ComplexBatch& b) { return {b.rows(), b.cols(), b.stride(), b.re(0, 0), b.im(0, 0)}; }

void require_isa(Isa isa) {
    if (!available(isa)) throw std::runtime_error("kernel variant not available: " + std::string(to_string(isa)));
}

}  // namespace

void multiply_left(Isa isa, const CMatrix& a, const ComplexBatch& x, ComplexBatch& out) {
    if (a.cols() != x.rows() || out.rows() != a.rows() || out.cols() != x.cols() || out.stride() != x.stride())
        throw std::invalid_argument("multiply_left: shape mismatch");
    require_isa(isa);
    const DenseCopy ac(a);
    switch (isa) {
        case Isa::scalar:
            detail::multiply_left_scalar(ac.view(), view(x), view(out));
            return;
        case Isa::avx2:
#if defined(FLUID_MIMO_HAVE_AVX2)
            detail::multiply_left_avx2(ac.view(), view(x), view(out));
#endif
            return;
    }
}

void hermitian_sandwich(Isa isa, const ComplexBatch& x, const CMatrix& p, ComplexBatch& out) {
    if (p.rows() != x.cols() || p.cols() != x.cols() || out.rows() != x.rows() || out.cols() != x.rows() ||
        out.stride() != x.stride())
        throw std::invalid_argument("hermitian_sandwich: shape mismatch");
    require_isa(isa);
    const DenseCopy pc(p);
    switch (isa) {
        case Isa::scalar:
            detail::hermitian_sandwich_scalar(view(x), pc.view(), view(out));
            return;
        case Isa::avx2:
#if defined(FLUID_MIMO_HAVE_AVX2)
            detail::hermitian_sandwich_avx2(view(x), pc.view(), view(out));
#endif
            return;
    }
}

void log2det_identity_plus(Isa isa, const ComplexBatch& w, double scale, std::span<double> out) {
    if (w.rows() != w.cols()) throw std::invalid_argument("log2det_identity_plus: batch matrices are not square");
    if (out.size() < w.stride()) throw std::invalid_argument("log2det_identity_plus: output span too short");
    require_isa(isa);
    switch (isa) {
        case Isa::scalar:
            detail::log2det_identity_plus_scalar(view(w), scale, out.data());
            return;
        case Isa::avx2:
#if defined(FLUID_MIMO_HAVE_AVX2)
            detail::log2det_identity_plus_avx2(view(w), scale, out.data());
#endif
            return;
    }
}

}  // namespace fluid_mimo::kernels
