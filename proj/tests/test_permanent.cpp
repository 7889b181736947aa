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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "lossyboson/ensembles.hpp"
#include "lossyboson/errors.hpp"
#include "lossyboson/permanent.hpp"
#include "lossyboson/rng.hpp"
#include "lossyboson/states.hpp"

using namespace lossyboson;

namespace {

double rel_diff(const complex_d& a, const complex_d& b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace

TEST_CASE("closed-form values") {
    SUBCASE("identity has permanent one") {
        for (int n : {1, 2, 5, 10}) {
            const PermanentValue p = permanent(ComplexMatrix::identity(n));
            CAPTURE(n);
            CHECK(std::abs(p.value - complex_d(1.0, 0.0)) < 1e-14);
        }
    }
    SUBCASE("all-ones matrix gives n!") {
        for (int n : {1, 2, 3, 6, 9}) {
            ComplexMatrix ones(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    ones(r, c) = complex_d(1.0, 0.0);
                }
            }
            const PermanentValue p = permanent(ones);
            CAPTURE(n);
            CHECK(std::abs(p.value.real() - factorial(n)) / factorial(n) < 1e-13);
            CHECK(std::abs(p.value.imag()) < 1e-9);
        }
    }
    SUBCASE("two by two is ad + bc") {
        ComplexMatrix m(2, 2);
        m(0, 0) = complex_d(1.0, 2.0);
        m(0, 1) = complex_d(-0.5, 1.0);
        m(1, 0) = complex_d(3.0, -1.0);
        m(1, 1) = complex_d(0.25, 0.75);
        const complex_d expected = m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
        CHECK(std::abs(permanent(m).value - expected) < 1e-14);
    }
    SUBCASE("single entry") {
        ComplexMatrix m(1, 1);
        m(0, 0) = complex_d(2.5, -1.5);
        CHECK(permanent(m).value == m(0, 0));
        CHECK(permanent_naive(m).value == m(0, 0));
    }
}

TEST_CASE("gray-code kernel agrees with the permutation sum up to n = 9") {
    for (int n = 1; n <= 9; ++n) {
        const ComplexMatrix m =
            sample_gaussian_matrix(n, n, Seed{101, static_cast<std::uint64_t>(n)});
        const PermanentValue fast = permanent(m);
        const PermanentValue naive = permanent_naive(m);
        CAPTURE(n);
        CHECK(rel_diff(fast.value, naive.value) < 1e-12);
    }
}

TEST_CASE("permanent is invariant under transpose and permutations") {
    const int n = 7;
    const ComplexMatrix m = sample_gaussian_matrix(n, n, Seed{102, 0});
    const PermanentValue base = permanent(m);

    CHECK(rel_diff(base.value, permanent(m.transposed()).value) < 1e-12);

    const std::vector<int> perm = {3, 0, 6, 1, 5, 2, 4};
    CHECK(rel_diff(base.value, permanent(select_rows(m, perm)).value) < 1e-12);
    CHECK(rel_diff(base.value, permanent(select_columns(m, perm)).value) < 1e-12);
}

TEST_CASE("permanent is multilinear in rows") {
    const int n = 6;
    const ComplexMatrix a = sample_gaussian_matrix(n, n, Seed{103, 0});
    const ComplexMatrix b = sample_gaussian_matrix(n, n, Seed{103, 1});

    // Replace row 2 of a with (row 2 of a) + (row 2 of b): the permanent
    // must split into the sum of the two variants.
    ComplexMatrix sum = a;
    ComplexMatrix swapped = a;
    for (int c = 0; c < n; ++c) {
        sum(2, c) = a(2, c) + b(2, c);
        swapped(2, c) = b(2, c);
    }
    const complex_d lhs = permanent(sum).value;
    const complex_d rhs = permanent(a).value + permanent(swapped).value;
    CHECK(rel_diff(lhs, rhs) < 1e-11);

    // Scaling one row scales the permanent linearly.
    ComplexMatrix scaled = a;
    for (int c = 0; c < n; ++c) {
        scaled(4, c) *= complex_d(0.0, 2.0);
    }
    CHECK(rel_diff(permanent(scaled).value, complex_d(0.0, 2.0) * permanent(a).value) < 1e-12);
}

TEST_CASE("serial and parallel sweeps agree") {
    for (int n : {8, 10, 13, 16}) {
        const ComplexMatrix m =
            sample_gaussian_matrix(n, n, Seed{104, static_cast<std::uint64_t>(n)});
        const PermanentValue serial = permanent(m, Exec::serial);
        const PermanentValue par = permanent(m, Exec::parallel);
        CAPTURE(n);
        CHECK(rel_diff(serial.value, par.value) < 1e-12);
        CHECK(std::abs(serial.abs_squared - par.abs_squared) <=
              1e-12 * std::max(serial.abs_squared, par.abs_squared));
    }
}

TEST_CASE("squared magnitude is consistent with the value") {
    const ComplexMatrix m = sample_gaussian_matrix(9, 9, Seed{105, 0});
    const PermanentValue p = permanent(m);
    CHECK(std::abs(p.abs_squared - std::norm(p.value)) <= 1e-14 * p.abs_squared);
}

TEST_CASE("shape and size guards") {
    CHECK_THROWS_AS(permanent(ComplexMatrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(permanent(ComplexMatrix(21, 21)), numeric_error);
    CHECK_THROWS_AS(permanent_naive(ComplexMatrix(10, 10)), numeric_error);
    // n = 20 itself is within the budget.
    CHECK_NOTHROW(permanent(ComplexMatrix::identity(20)));
}
