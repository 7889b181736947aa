/**
 * Copyright 2026 The lossyboson Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lossyboson/ensembles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lossyboson/errors.hpp"

namespace lossyboson {

ComplexMatrix sample_gaussian_matrix(int rows, int cols, Seed seed) {
    ComplexMatrix m(rows, cols);
    CounterRng rng(seed);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            m(r, c) = rng.complex_gaussian();
        }
    }
    return m;
}

ComplexMatrix sample_haar_unitary(int m, Seed seed) {
    if (m < 1) {
        throw std::invalid_argument("unitary dimension must be positive");
    }
    ComplexMatrix u = sample_gaussian_matrix(m, m, seed);

    // Modified Gram-Schmidt over columns, re-running the projection sweep a
    // second time per column to push orthogonality down to roundoff.
    std::vector<complex_d> v(m);
    for (int j = 0; j < m; ++j) {
        for (int r = 0; r < m; ++r) {
            v[r] = u(r, j);
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                complex_d overlap(0.0, 0.0);
                for (int r = 0; r < m; ++r) {
                    overlap += std::conj(u(r, i)) * v[r];
                }
                for (int r = 0; r < m; ++r) {
                    v[r] -= overlap * u(r, i);
                }
            }
        }
        double norm_sq = 0.0;
        for (int r = 0; r < m; ++r) {
            norm_sq += std::norm(v[r]);
        }
        if (!(norm_sq > 1e-280)) {
            throw numeric_error("degenerate Gaussian draw during orthonormalization");
        }
        const double inv_norm = 1.0 / std::sqrt(norm_sq);
        for (int r = 0; r < m; ++r) {
            u(r, j) = v[r] * inv_norm;
        }
    }
    return u;
}

double unitarity_defect(const ComplexMatrix& u) {
    if (!u.is_square()) {
        throw std::invalid_argument("unitarity check requires a square matrix");
    }
    const int m = u.rows();
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            complex_d dot(0.0, 0.0);
            for (int r = 0; r < m; ++r) {
                dot += u(i, r) * std::conj(u(j, r));
            }
            const complex_d expected = (i == j) ? complex_d(1.0, 0.0) : complex_d(0.0, 0.0);
            worst = std::max(worst, std::abs(dot - expected));
        }
    }
    return worst;
}

ComplexMatrix submatrix_st(const ComplexMatrix& u,
                           const OccupationState& input,
                           const OccupationState& output) {
    if (input.modes() != u.cols()) {
        throw std::invalid_argument("input state has " + std::to_string(input.modes()) +
                                    " modes but the matrix has " + std::to_string(u.cols()) +
                                    " columns");
    }
    if (output.modes() != u.rows()) {
        throw std::invalid_argument("output state has " + std::to_string(output.modes()) +
                                    " modes but the matrix has " + std::to_string(u.rows()) +
                                    " rows");
    }
    const std::vector<int> row_idx = output.mode_indices();
    const std::vector<int> col_idx = input.mode_indices();
    if (row_idx.empty() || col_idx.empty()) {
        throw std::invalid_argument("states must contain at least one photon");
    }
    return select_rows_columns(u, row_idx, col_idx);
}

ComplexMatrix scale_right_columns(const ComplexMatrix& a, int k, double c) {
    if (k < 0 || k > a.cols()) {
        throw std::invalid_argument("cannot scale " + std::to_string(k) + " columns of a " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " matrix");
    }
    ComplexMatrix out = a;
    for (int r = 0; r < a.rows(); ++r) {
        for (int col = a.cols() - k; col < a.cols(); ++col) {
            out(r, col) *= c;
        }
    }
    return out;
}

ComplexMatrix scale_bottom_rows(const ComplexMatrix& a, int k, double c) {
    if (k < 0 || k > a.rows()) {
        throw std::invalid_argument("cannot scale " + std::to_string(k) + " rows of a " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " matrix");
    }
    ComplexMatrix out = a;
    for (int r = a.rows() - k; r < a.rows(); ++r) {
        for (int col = 0; col < a.cols(); ++col) {
            out(r, col) *= c;
        }
    }
    return out;
}

} // namespace lossyboson
