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

// AVX2 variants, four lanes per register. Only this translation unit is built
// with -mavx2 and it is entered solely after a runtime CPU check, so it must
// not instantiate inline code shared with other units (hence raw buffers and
// no standard containers with non-local element types).

#include <immintrin.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>

#include "views.hpp"

namespace fluid_mimo::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

inline std::size_t at(int cols, std::size_t stride, int i, int j) {
    return static_cast<std::size_t>(i * cols + j) * stride;
}

struct Vc {
    __m256d re;
    __m256d im;
};

// Scratch of `n` complex lanes; aligned_alloc keeps this free of shared template code.
struct Scratch {
    explicit Scratch(std::size_t n)
        : data(static_cast<Vc*>(std::aligned_alloc(32, sizeof(Vc) * (n == 0 ? 1 : n)))) {}
    ~Scratch() { std::free(data); }
    Scratch(const Scratch&) = delete;
    Scratch& operator=(const Scratch&) = delete;
    Vc* data;
};

inline Vc load(const ConstBatchView& b, int i, int j, std::size_t s) {
    const std::size_t o = at(b.cols, b.stride, i, j) + s;
    return {_mm256_loadu_pd(b.re + o), _mm256_loadu_pd(b.im + o)};
}

inline void store(const BatchView& b, int i, int j, std::size_t s, const Vc& v) {
    const std::size_t o = at(b.cols, b.stride, i, j) + s;
    _mm256_storeu_pd(b.re + o, v.re);
    _mm256_storeu_pd(b.im + o, v.im);
}

}  // namespace

void multiply_left_avx2(DenseView a, ConstBatchView x, BatchView out) {
    for (int i = 0; i < out.rows; ++i) {
        for (int j = 0; j < out.cols; ++j) {
            for (std::size_t s = 0; s < x.stride; s += kLanes) {
                __m256d acc_re = _mm256_setzero_pd();
                __m256d acc_im = _mm256_setzero_pd();
                for (int k = 0; k < x.rows; ++k) {
                    const __m256d ar = _mm256_set1_pd(a.re[i * a.cols + k]);
                    const __m256d ai = _mm256_set1_pd(a.im[i * a.cols + k]);
                    const Vc xv = load(x, k, j, s);
                    acc_re = _mm256_add_pd(acc_re, _mm256_sub_pd(_mm256_mul_pd(ar, xv.re), _mm256_mul_pd(ai, xv.im)));
                    acc_im = _mm256_add_pd(acc_im, _mm256_add_pd(_mm256_mul_pd(ar, xv.im), _mm256_mul_pd(ai, xv.re)));
                }
                store(out, i, j, s, {acc_re, acc_im});
            }
        }
    }
}

void hermitian_sandwich_avx2(ConstBatchView x, DenseView p, BatchView out) {
    const int inner = x.cols;
    Scratch t(static_cast<std::size_t>(inner));
    for (std::size_t s = 0; s < x.stride; s += kLanes) {
        for (int i = 0; i < x.rows; ++i) {
            for (int b = 0; b < inner; ++b) {
                __m256d acc_re = _mm256_setzero_pd();
                __m256d acc_im = _mm256_setzero_pd();
                for (int a = 0; a < inner; ++a) {
                    const Vc xv = load(x, i, a, s);
                    const __m256d pr = _mm256_set1_pd(p.re[a * p.cols + b]);
                    const __m256d pi = _mm256_set1_pd(p.im[a * p.cols + b]);
                    acc_re = _mm256_add_pd(acc_re, _mm256_sub_pd(_mm256_mul_pd(xv.re, pr), _mm256_mul_pd(xv.im, pi)));
                    acc_im = _mm256_add_pd(acc_im, _mm256_add_pd(_mm256_mul_pd(xv.re, pi), _mm256_mul_pd(xv.im, pr)));
                }
                t.data[b] = {acc_re, acc_im};
            }
            for (int j = 0; j <= i; ++j) {
                __m256d acc_re = _mm256_setzero_pd();
                __m256d acc_im = _mm256_setzero_pd();
                for (int b = 0; b < inner; ++b) {
                    const Vc tv = t.data[b];
                    const Vc xv = load(x, j, b, s);
                    acc_re = _mm256_add_pd(acc_re, _mm256_add_pd(_mm256_mul_pd(tv.re, xv.re), _mm256_mul_pd(tv.im, xv.im)));
                    acc_im = _mm256_add_pd(acc_im, _mm256_sub_pd(_mm256_mul_pd(tv.im, xv.re), _mm256_mul_pd(tv.re, xv.im)));
                }
                store(out, i, j, s, {acc_re, acc_im});
            }
        }
    }
}

void log2det_identity_plus_avx2(ConstBatchView w, double scale, double* out) {
    const int n = w.rows;
    const auto nn = static_cast<std::size_t>(n);
    Scratch l(nn * nn);
    Scratch d(nn);  // only .re is used
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d sc = _mm256_set1_pd(scale);
    const __m256d zero = _mm256_setzero_pd();

    for (std::size_t s = 0; s < w.stride; s += kLanes) {
        __m256d bad = _mm256_setzero_pd();
        for (int j = 0; j < n; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            __m256d dj = _mm256_add_pd(one, _mm256_mul_pd(sc, _mm256_loadu_pd(w.re + at(n, w.stride, j, j) + s)));
            for (std::size_t k = 0; k < jj; ++k) {
                const Vc ljk = l.data[jj * nn + k];
                const __m256d mag = _mm256_add_pd(_mm256_mul_pd(ljk.re, ljk.re), _mm256_mul_pd(ljk.im, ljk.im));
                dj = _mm256_sub_pd(dj, _mm256_mul_pd(mag, d.data[k].re));
            }
            // Lanes with a non-positive (or NaN) pivot are reported as NaN below.
            bad = _mm256_or_pd(bad, _mm256_cmp_pd(dj, zero, _CMP_NGT_UQ));
            d.data[jj].re = dj;
            for (int i = j + 1; i < n; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                __m256d num_re = _mm256_mul_pd(sc, _mm256_loadu_pd(w.re + at(n, w.stride, i, j) + s));
                __m256d num_im = _mm256_mul_pd(sc, _mm256_loadu_pd(w.im + at(n, w.stride, i, j) + s));
                for (std::size_t k = 0; k < jj; ++k) {
                    const Vc lik = l.data[ii * nn + k];
                    const Vc ljk = l.data[jj * nn + k];
                    const __m256d dk = d.data[k].re;
                    const __m256d pr = _mm256_mul_pd(
                        _mm256_add_pd(_mm256_mul_pd(lik.re, ljk.re), _mm256_mul_pd(lik.im, ljk.im)), dk);
                    const __m256d pi = _mm256_mul_pd(
                        _mm256_sub_pd(_mm256_mul_pd(lik.im, ljk.re), _mm256_mul_pd(lik.re, ljk.im)), dk);
                    num_re = _mm256_sub_pd(num_re, pr);
                    num_im = _mm256_sub_pd(num_im, pi);
                }
                l.data[ii * nn + jj] = {_mm256_div_pd(num_re, dj), _mm256_div_pd(num_im, dj)};
            }
        }

        const int mask = _mm256_movemask_pd(bad);
        alignas(32) double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t j = 0; j < nn; ++j) {
            alignas(32) double dv[kLanes];
            _mm256_store_pd(dv, d.data[j].re);
            for (std::size_t lane = 0; lane < kLanes; ++lane) acc[lane] += std::log2(dv[lane]);
        }
        for (std::size_t lane = 0; lane < kLanes; ++lane)
            out[s + lane] = (mask >> lane) & 1 ? std::numeric_limits<double>::quiet_NaN() : acc[lane];
    }
}

}  // namespace fluid_mimo::kernels::detail
