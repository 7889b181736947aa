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

#ifndef LOSSYBOSON_MATRIX_HPP
#define LOSSYBOSON_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lossyboson {

using complex_d = std::complex<double>;

/**
 * @brief Dense rectangular complex matrix, row-major storage.
 *
 * The workhorse container for interferometers, Gaussian draws and their
 * submatrices. Operations in this library return new matrices rather than
 * mutating inputs, which keeps randomized pipelines referentially
 * transparent.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// Zero-filled r-by-c matrix. Both dimensions must be positive.
    ComplexMatrix(int rows, int cols);

    /// Takes ownership of row-major entries; entries.size() must equal rows*cols.
    ComplexMatrix(int rows, int cols, std::vector<complex_d> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    complex_d& operator()(int r, int c) {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }
    const complex_d& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    /// Row-major view of all entries.
    const std::vector<complex_d>& entries() const { return data_; }

    /// View of one row.
    std::span<const complex_d> row(int r) const {
        return std::span<const complex_d>(data_.data() + static_cast<std::size_t>(r) * cols_,
                                          static_cast<std::size_t>(cols_));
    }

    ComplexMatrix transposed() const;
    ComplexMatrix conjugate_transposed() const;

    /// True when every entry is finite (no NaN/Inf in either component).
    bool all_finite() const;

    /// Max entrywise |a_ij - b_ij|; shapes must match.
    static double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

    static ComplexMatrix identity(int n);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<complex_d> data_;
};

/// Gather the given rows (duplicates allowed) into a new matrix.
ComplexMatrix select_rows(const ComplexMatrix& m, std::span<const int> rows);

/// Gather the given columns (duplicates allowed) into a new matrix.
ComplexMatrix select_columns(const ComplexMatrix& m, std::span<const int> cols);

/// Gather a rows-by-cols cross section.
ComplexMatrix select_rows_columns(const ComplexMatrix& m,
                                  std::span<const int> rows,
                                  std::span<const int> cols);

} // namespace lossyboson

#endif // LOSSYBOSON_MATRIX_HPP
