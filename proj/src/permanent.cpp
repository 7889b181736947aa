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

#include "lossyboson/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lossyboson/errors.hpp"

namespace lossyboson {

namespace {

using complex_ld = std::complex<long double>;

constexpr int MAX_DIM_FAST = 20;
constexpr int MAX_DIM_NAIVE = 9;

// Number of segments the parallel sweep is cut into. Fixed (rather than
// derived from the thread count) so that the partition, and therefore the
// rounding behaviour, is identical no matter how many threads execute it.
constexpr std::uint64_t PARALLEL_SEGMENTS = 64;

/**
 * Partial sum of the +/-1 expansion over sign vectors indexed by
 * [begin, end). Index i maps to the sign vector whose Gray code is
 * i ^ (i >> 1): bit b set means row b+1 carries a minus sign (row 0 is
 * pinned to plus). Consecutive indices differ in one row, so the column
 * sums are updated in O(n) per step after an O(n^2) re-initialization.
 */
complex_ld signed_sum_segment(const ComplexMatrix& m, std::uint64_t begin, std::uint64_t end) {
    const int n = m.rows();
    std::uint64_t gray = begin ^ (begin >> 1);

    std::vector<complex_ld> col_sum(n);
    for (int j = 0; j < n; ++j) {
        complex_ld s = m(0, j);
        for (int i = 1; i < n; ++i) {
            const bool minus = (gray >> (i - 1)) & 1;
            s += minus ? -complex_ld(m(i, j)) : complex_ld(m(i, j));
        }
        col_sum[j] = s;
    }
    long double parity = (std::popcount(gray) & 1) ? -1.0L : 1.0L;

    complex_ld acc(0.0L, 0.0L);
    for (std::uint64_t idx = begin;;) {
        complex_ld prod = col_sum[0];
        for (int j = 1; j < n; ++j) {
            prod *= col_sum[j];
        }
        acc += parity * prod;

        if (++idx == end) {
            break;
        }
        // Row whose sign flips between consecutive Gray codes.
        const int bit = std::countr_zero(idx);
        const int row = bit + 1;
        gray ^= (std::uint64_t{1} << bit);
        const long double step = ((gray >> bit) & 1) ? -2.0L : 2.0L;
        for (int j = 0; j < n; ++j) {
            col_sum[j] += step * complex_ld(m(row, j));
        }
        parity = -parity;
    }
    return acc;
}

// Sums the segment partials two at a time in a fixed binary-tree order.
complex_ld pairwise_total(std::vector<complex_ld> parts) {
    std::size_t len = parts.size();
    while (len > 1) {
        const std::size_t half = (len + 1) / 2;
        for (std::size_t i = 0; i + half < len; ++i) {
            parts[i] += parts[i + half];
        }
        len = half;
    }
    return parts.empty() ? complex_ld(0.0L, 0.0L) : parts[0];
}

PermanentValue finish(complex_ld signed_sum, int n) {
    // The expansion over 2^(n-1) sign vectors carries a 2^(1-n) prefactor;
    // ldexp applies it exactly.
    const complex_ld per(std::ldexp(signed_sum.real(), 1 - n),
                         std::ldexp(signed_sum.imag(), 1 - n));
    PermanentValue out;
    out.value = complex_d(static_cast<double>(per.real()), static_cast<double>(per.imag()));
    out.abs_squared = static_cast<double>(per.real() * per.real() + per.imag() * per.imag());
    return out;
}

void check_square(const ComplexMatrix& m, int max_dim, const char* kernel) {
    if (!m.is_square()) {
        throw std::invalid_argument("permanent requires a square matrix, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.rows() > max_dim) {
        throw numeric_error(std::string(kernel) + " permanent capped at n = " +
                            std::to_string(max_dim) + " (double-precision budget), got n = " +
                            std::to_string(m.rows()));
    }
}

} // namespace

PermanentValue permanent(const ComplexMatrix& m, Exec exec) {
    check_square(m, MAX_DIM_FAST, "gray-code");
    const int n = m.rows();
    const std::uint64_t total = std::uint64_t{1} << (n - 1);

    if (exec == Exec::serial || total < 2 * PARALLEL_SEGMENTS) {
        return finish(signed_sum_segment(m, 0, total), n);
    }

    const std::uint64_t seg_count = PARALLEL_SEGMENTS;
    const std::uint64_t base = total / seg_count;
    const std::uint64_t rem = total % seg_count;
    std::vector<complex_ld> parts(seg_count);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(seg_count); ++s) {
        const std::uint64_t u = static_cast<std::uint64_t>(s);
        const std::uint64_t begin = u * base + std::min<std::uint64_t>(u, rem);
        const std::uint64_t end = begin + base + (u < rem ? 1 : 0);
        parts[u] = signed_sum_segment(m, begin, end);
    }

    return finish(pairwise_total(std::move(parts)), n);
}

PermanentValue permanent_naive(const ComplexMatrix& m) {
    check_square(m, MAX_DIM_NAIVE, "permutation-sum");
    const int n = m.rows();

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    complex_ld acc(0.0L, 0.0L);
    do {
        complex_ld prod(1.0L, 0.0L);
        for (int i = 0; i < n; ++i) {
            prod *= complex_ld(m(i, perm[i]));
        }
        acc += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));

    PermanentValue out;
    out.value = complex_d(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    out.abs_squared = static_cast<double>(acc.real() * acc.real() + acc.imag() * acc.imag());
    return out;
}

} // namespace lossyboson
