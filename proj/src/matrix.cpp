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

#include "lossyboson/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lossyboson {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows > 0 ? rows : 0) * (cols > 0 ? cols : 0)) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("matrix dimensions must be positive, got " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
    }
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<complex_d> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("matrix dimensions must be positive, got " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (data_.size() != static_cast<std::size_t>(rows) * cols) {
        throw std::invalid_argument("entry count " + std::to_string(data_.size()) +
                                    " does not match shape " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
    }
}

ComplexMatrix ComplexMatrix::transposed() const {
    ComplexMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

ComplexMatrix ComplexMatrix::conjugate_transposed() const {
    ComplexMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            t(c, r) = std::conj((*this)(r, c));
        }
    }
    return t;
}

bool ComplexMatrix::all_finite() const {
    for (const complex_d& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("shape mismatch in max_abs_diff");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        worst = std::max(worst, std::abs(a.data_[i] - b.data_[i]));
    }
    return worst;
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = complex_d(1.0, 0.0);
    }
    return m;
}

namespace {

void check_indices(std::span<const int> idx, int bound, const char* what) {
    if (idx.empty()) {
        throw std::invalid_argument(std::string("empty ") + what + " selection");
    }
    for (int i : idx) {
        if (i < 0 || i >= bound) {
            throw std::invalid_argument(std::string(what) + " index " + std::to_string(i) +
                                        " out of range [0, " + std::to_string(bound) + ")");
        }
    }
}

} // namespace

ComplexMatrix select_rows(const ComplexMatrix& m, std::span<const int> rows) {
    check_indices(rows, m.rows(), "row");
    ComplexMatrix out(static_cast<int>(rows.size()), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            out(static_cast<int>(r), c) = m(rows[r], c);
        }
    }
    return out;
}

ComplexMatrix select_columns(const ComplexMatrix& m, std::span<const int> cols) {
    check_indices(cols, m.cols(), "column");
    ComplexMatrix out(m.rows(), static_cast<int>(cols.size()));
    for (int r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out(r, static_cast<int>(c)) = m(r, cols[c]);
        }
    }
    return out;
}

ComplexMatrix select_rows_columns(const ComplexMatrix& m,
                                  std::span<const int> rows,
                                  std::span<const int> cols) {
    check_indices(rows, m.rows(), "row");
    check_indices(cols, m.cols(), "column");
    ComplexMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out(static_cast<int>(r), static_cast<int>(c)) = m(rows[r], cols[c]);
        }
    }
    return out;
}

} // namespace lossyboson
