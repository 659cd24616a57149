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

// Reference kernels. The operation order here defines the results; the SIMD
// variants mirror it exactly.

#include <cmath>
#include <limits>
#include <vector>

#include "views.hpp"

namespace fluid_mimo::kernels::detail {

namespace {

inline std::size_t at(int cols, std::size_t stride, int i, int j) {
    return static_cast<std::size_t>(i * cols + j) * stride;
}

}  // namespace

void multiply_left_scalar(DenseView a, ConstBatchView x, BatchView out) {
    const std::size_t lanes = x.stride;
    for (int i = 0; i < out.rows; ++i) {
        for (int j = 0; j < out.cols; ++j) {
            double* ore = out.re + at(out.cols, out.stride, i, j);
            double* oim = out.im + at(out.cols, out.stride, i, j);
            for (std::size_t s = 0; s < lanes; ++s) {
                double acc_re = 0.0;
                double acc_im = 0.0;
                for (int k = 0; k < x.rows; ++k) {
                    const double ar = a.re[i * a.cols + k];
                    const double ai = a.im[i * a.cols + k];
                    const double xr = x.re[at(x.cols, lanes, k, j) + s];
                    const double xi = x.im[at(x.cols, lanes, k, j) + s];
                    acc_re = acc_re + (ar * xr - ai * xi);
                    acc_im = acc_im + (ar * xi + ai * xr);
                }
                ore[s] = acc_re;
                oim[s] = acc_im;
            }
        }
    }
}

void hermitian_sandwich_scalar(ConstBatchView x, DenseView p, BatchView out) {
    const std::size_t lanes = x.stride;
    const int inner = x.cols;
    std::vector<double> t_re(static_cast<std::size_t>(inner));
    std::vector<double> t_im(static_cast<std::size_t>(inner));
    for (std::size_t s = 0; s < lanes; ++s) {
        for (int i = 0; i < x.rows; ++i) {
            // Row i of x_s p.
            for (int b = 0; b < inner; ++b) {
                double acc_re = 0.0;
                double acc_im = 0.0;
                for (int a = 0; a < inner; ++a) {
                    const double xr = x.re[at(inner, lanes, i, a) + s];
                    const double xi = x.im[at(inner, lanes, i, a) + s];
                    const double pr = p.re[a * p.cols + b];
                    const double pi = p.im[a * p.cols + b];
                    acc_re = acc_re + (xr * pr - xi * pi);
                    acc_im = acc_im + (xr * pi + xi * pr);
                }
                t_re[static_cast<std::size_t>(b)] = acc_re;
                t_im[static_cast<std::size_t>(b)] = acc_im;
            }
            for (int j = 0; j <= i; ++j) {
                double acc_re = 0.0;
                double acc_im = 0.0;
                for (int b = 0; b < inner; ++b) {
                    const double tr = t_re[static_cast<std::size_t>(b)];
                    const double ti = t_im[static_cast<std::size_t>(b)];
                    const double xr = x.re[at(inner, lanes, j, b) + s];
                    const double xi = x.im[at(inner, lanes, j, b) + s];
                    acc_re = acc_re + (tr * xr + ti * xi);
                    acc_im = acc_im + (ti * xr - tr * xi);
                }
                out.re[at(out.cols, out.stride, i, j) + s] = acc_re;
                out.im[at(out.cols, out.stride, i, j) + s] = acc_im;
            }
        }
    }
}

void log2det_identity_plus_scalar(ConstBatchView w, double scale, double* out) {
    const std::size_t lanes = w.stride;
    const int n = w.rows;
    const auto nn = static_cast<std::size_t>(n);
    std::vector<double> l_re(nn * nn);
    std::vector<double> l_im(nn * nn);
    std::vector<double> d(nn);
    for (std::size_t s = 0; s < lanes; ++s) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            double dj = 1.0 + scale * w.re[at(n, lanes, j, j) + s];
            for (int k = 0; k < j; ++k) {
                const auto jk = jj * nn + static_cast<std::size_t>(k);
                const double mag = l_re[jk] * l_re[jk] + l_im[jk] * l_im[jk];
                dj = dj - mag * d[static_cast<std::size_t>(k)];
            }
            if (!(dj > 0.0)) {
                ok = false;
                break;
            }
            d[jj] = dj;
            for (int i = j + 1; i < n; ++i) {
                const auto ii = static_cast<std::size_t>(i);
                double num_re = scale * w.re[at(n, lanes, i, j) + s];
                double num_im = scale * w.im[at(n, lanes, i, j) + s];
                for (int k = 0; k < j; ++k) {
                    const auto ik = ii * nn + static_cast<std::size_t>(k);
                    const auto jk = jj * nn + static_cast<std::size_t>(k);
                    const double dk = d[static_cast<std::size_t>(k)];
                    // l_ik * conj(l_jk) * d_k
                    const double pr = (l_re[ik] * l_re[jk] + l_im[ik] * l_im[jk]) * dk;
                    const double pi = (l_im[ik] * l_re[jk] - l_re[ik] * l_im[jk]) * dk;
                    num_re = num_re - pr;
                    num_im = num_im - pi;
                }
                l_re[ii * nn + jj] = num_re / dj;
                l_im[ii * nn + jj] = num_im / dj;
            }
        }
        if (!ok) {
            out[s] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < nn; ++j) acc += std::log2(d[j]);
        out[s] = acc;
    }
}

}  // namespace fluid_mimo::kernels::detail
