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
#include <vector>

#include "lossyboson/ensembles.hpp"
#include "lossyboson/errors.hpp"
#include "lossyboson/loss_models.hpp"
#include "lossyboson/matrix.hpp"
#include "lossyboson/permanent.hpp"
#include "lossyboson/reduction.hpp"
#include "lossyboson/rng.hpp"
#include "lossyboson/states.hpp"

using namespace lossyboson;

namespace {

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

ComplexMatrix gaussian(int rows, int cols, std::uint64_t tag) {
    return sample_gaussian_matrix(rows, cols, Seed{0x10551u, tag});
}

// Every keep-sized index subset of {0..pool-1}, built recursively so the
// enumeration shares no code with the library's subset walker.
void collect_subsets(int pool, int keep, int from, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == keep) {
        out.push_back(cur);
        return;
    }
    for (int i = from; i <= pool - (keep - static_cast<int>(cur.size())); ++i) {
        cur.push_back(i);
        collect_subsets(pool, keep, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> all_subsets(int pool, int keep) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    collect_subsets(pool, keep, 0, cur, out);
    return out;
}

// Hand-rolled gather so the oracle does not lean on select_rows/select_columns.
ComplexMatrix gather(const ComplexMatrix& a, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
    ComplexMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out(static_cast<int>(r), static_cast<int>(c)) = a(rows[r], cols[c]);
        }
    }
    return out;
}

std::vector<int> iota_vec(int count) {
    std::vector<int> v(count);
    for (int i = 0; i < count; ++i) {
        v[i] = i;
    }
    return v;
}

double brute_phi_columns(const ComplexMatrix& a) {
    const auto subsets = all_subsets(a.cols(), a.rows());
    const std::vector<int> rows = iota_vec(a.rows());
    long double total = 0.0L;
    for (const auto& cols : subsets) {
        total += permanent_naive(gather(a, rows, cols)).abs_squared;
    }
    return static_cast<double>(total / static_cast<long double>(subsets.size()));
}

double brute_phi_rows(const ComplexMatrix& a) {
    const auto subsets = all_subsets(a.rows(), a.cols());
    const std::vector<int> cols = iota_vec(a.cols());
    long double total = 0.0L;
    for (const auto& rows : subsets) {
        total += permanent_naive(gather(a, rows, cols)).abs_squared;
    }
    return static_cast<double>(total / static_cast<long double>(subsets.size()));
}

double brute_phi_shuffle(const ComplexMatrix& a, int dropped) {
    const auto subsets = all_subsets(a.rows(), a.rows() - dropped);
    long double total = 0.0L;
    for (const auto& rows : subsets) {
        for (const auto& cols : subsets) {
            total += permanent_naive(gather(a, rows, cols)).abs_squared;
        }
    }
    const long double pairs = static_cast<long double>(subsets.size()) *
                              static_cast<long double>(subsets.size());
    return static_cast<double>(total / pairs);
}

double lagrange_eval(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    long double sum = 0.0L;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        long double weight = 1.0L;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i != j) {
                weight *= (x - xs[i]) / (xs[j] - xs[i]);
            }
        }
        sum += weight * static_cast<long double>(ys[j]);
    }
    return static_cast<double>(sum);
}

std::vector<double> even_nodes(double lo, double hi, int count) {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) {
        xs[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    }
    return xs;
}

} // namespace

TEST_CASE("column-subset average matches hand formulas") {
    SUBCASE("one by two row averages the two entry magnitudes") {
        ComplexMatrix a(1, 2);
        a(0, 0) = complex_d(0.6, -1.2);
        a(0, 1) = complex_d(-0.3, 0.4);
        const double expected = (std::norm(a(0, 0)) + std::norm(a(0, 1))) / 2.0;
        CHECK(rel_diff(phi_input_loss(a), expected) < 1e-15);
    }
    SUBCASE("square input reduces to the permanent magnitude") {
        const ComplexMatrix a = gaussian(4, 4, 11);
        CHECK(rel_diff(phi_input_loss(a), permanent(a).abs_squared) < 1e-14);
    }
    SUBCASE("result is non-negative") {
        for (std::uint64_t tag = 0; tag < 20; ++tag) {
            CHECK(phi_input_loss(gaussian(3, 5, tag)) >= 0.0);
        }
    }
}

TEST_CASE("column-subset average matches the brute-force oracle") {
    for (std::uint64_t tag = 0; tag < 20; ++tag) {
        CAPTURE(tag);
        const ComplexMatrix a35 = gaussian(3, 5, 100 + tag);
        CHECK(rel_diff(phi_input_loss(a35), brute_phi_columns(a35)) < 1e-12);
        const ComplexMatrix a46 = gaussian(4, 6, 200 + tag);
        CHECK(rel_diff(phi_input_loss(a46), brute_phi_columns(a46)) < 1e-12);
    }
}

TEST_CASE("row-subset average matches the brute-force oracle and hand formulas") {
    SUBCASE("two by one column averages the two entry magnitudes") {
        ComplexMatrix a(2, 1);
        a(0, 0) = complex_d(1.5, 0.25);
        a(1, 0) = complex_d(-0.75, 2.0);
        const double expected = (std::norm(a(0, 0)) + std::norm(a(1, 0))) / 2.0;
        CHECK(rel_diff(phi_dark(a), expected) < 1e-15);
    }
    SUBCASE("square input reduces to the permanent magnitude") {
        const ComplexMatrix a = gaussian(3, 3, 12);
        CHECK(rel_diff(phi_dark(a), permanent(a).abs_squared) < 1e-14);
    }
    SUBCASE("brute force over row subsets") {
        for (std::uint64_t tag = 0; tag < 20; ++tag) {
            CAPTURE(tag);
            const ComplexMatrix a = gaussian(5, 3, 300 + tag);
            CHECK(rel_diff(phi_dark(a), brute_phi_rows(a)) < 1e-12);
        }
    }
}

TEST_CASE("row-subset average equals the column-subset average of the transpose") {
    const int shapes[][2] = {{5, 3}, {4, 2}, {3, 3}, {6, 5}, {7, 1}};
    for (std::uint64_t s = 0; s < 5; ++s) {
        for (std::uint64_t tag = 0; tag < 8; ++tag) {
            const ComplexMatrix a = gaussian(shapes[s][0], shapes[s][1], 400 + 8 * s + tag);
            CAPTURE(shapes[s][0]);
            CAPTURE(shapes[s][1]);
            CHECK(rel_diff(phi_dark(a), phi_input_loss(a.transposed())) < 1e-12);
        }
    }
}

TEST_CASE("aligned-subset average matches the brute-force oracle and hand formulas") {
    SUBCASE("zero dropped reduces to the permanent magnitude") {
        const ComplexMatrix a = gaussian(4, 4, 13);
        CHECK(rel_diff(phi_shuffle_exact(a, 0), permanent(a).abs_squared) < 1e-14);
    }
    SUBCASE("two by two with one dropped averages the four entry magnitudes") {
        const ComplexMatrix a = gaussian(2, 2, 14);
        const double expected = (std::norm(a(0, 0)) + std::norm(a(0, 1)) + std::norm(a(1, 0)) +
                                 std::norm(a(1, 1))) /
                                4.0;
        CHECK(rel_diff(phi_shuffle_exact(a, 1), expected) < 1e-14);
    }
    SUBCASE("double-loop brute force") {
        for (std::uint64_t tag = 0; tag < 20; ++tag) {
            CAPTURE(tag);
            const ComplexMatrix a44 = gaussian(4, 4, 500 + tag);
            CHECK(rel_diff(phi_shuffle_exact(a44, 2), brute_phi_shuffle(a44, 2)) < 1e-12);
            const ComplexMatrix a33 = gaussian(3, 3, 600 + tag);
            CHECK(rel_diff(phi_shuffle_exact(a33, 1), brute_phi_shuffle(a33, 1)) < 1e-12);
        }
    }
}

TEST_CASE("mixture average weights the aligned-subset terms") {
    SUBCASE("all weight on zero losses gives the permanent magnitude") {
        const ComplexMatrix a = gaussian(3, 3, 15);
        const LossModel m = LossModel::shuffle_mixture({1.0});
        CHECK(rel_diff(phi_shuffle_mixture(a, m), permanent(a).abs_squared) < 1e-14);
    }
    SUBCASE("all weight on the top count matches the exact average") {
        const ComplexMatrix a = gaussian(4, 4, 16);
        const LossModel m = LossModel::shuffle_mixture({0.0, 0.0, 1.0});
        CHECK(rel_diff(phi_shuffle_mixture(a, m), phi_shuffle_exact(a, 2)) < 1e-14);
    }
    SUBCASE("even two-way split against double brute force") {
        for (std::uint64_t tag = 0; tag < 10; ++tag) {
            CAPTURE(tag);
            const ComplexMatrix a = gaussian(3, 3, 700 + tag);
            const LossModel m = LossModel::shuffle_mixture({0.5, 0.5});
            const double expected =
                0.5 * brute_phi_shuffle(a, 0) + 0.5 * brute_phi_shuffle(a, 1);
            CHECK(rel_diff(phi_shuffle_mixture(a, m), expected) < 1e-12);
        }
    }
}

TEST_CASE("scaled-column map is a low-degree polynomial in the scale squared") {
    // Scaling the k extra columns by c makes the column-subset average a
    // degree-k polynomial in x = c^2 whose constant term is the permanent
    // magnitude of the unscaled left block over the subset count. Fit at
    // k+1 nodes, then check a held-out node and the extrapolated constant.
    const int cases[][2] = {{3, 1}, {4, 2}, {5, 3}};
    for (std::uint64_t idx = 0; idx < 3; ++idx) {
        const int n = cases[idx][0];
        const int k = cases[idx][1];
        CAPTURE(n);
        CAPTURE(k);
        const ComplexMatrix a = gaussian(n, n + k, 800 + idx);

        const std::vector<double> xs = even_nodes(0.25, 1.0, k + 1);
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            ys[i] = phi_input_loss(scale_right_columns(a, k, std::sqrt(xs[i])));
        }

        const double x_held = 1.37;
        const double direct = phi_input_loss(scale_right_columns(a, k, std::sqrt(x_held)));
        CHECK(rel_diff(lagrange_eval(xs, ys, x_held), direct) < 1e-8);

        const ComplexMatrix left = select_columns(a, iota_vec(n));
        const double constant =
            permanent(left).abs_squared / static_cast<double>(binomial(n + k, k));
        CHECK(rel_diff(lagrange_eval(xs, ys, 0.0), constant) < 1e-8);
    }
}

TEST_CASE("scaled shuffle map is degree two-k with the matching constant term") {
    // Scaling both the k extra rows and k extra columns by c doubles the
    // degree, and the constant term picks up the squared subset count.
    const int cases[][2] = {{2, 1}, {3, 1}, {2, 2}};
    for (std::uint64_t idx = 0; idx < 3; ++idx) {
        const int n = cases[idx][0];
        const int k = cases[idx][1];
        CAPTURE(n);
        CAPTURE(k);
        const ComplexMatrix a = gaussian(n + k, n + k, 900 + idx);

        const std::vector<double> xs = even_nodes(0.25, 1.0, 2 * k + 1);
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double c = std::sqrt(xs[i]);
            const ComplexMatrix scaled = scale_bottom_rows(scale_right_columns(a, k, c), k, c);
            CHECK(phi_shuffle_exact(scaled, k) == phi_shuffle_exact(scaled, k, Exec::parallel));
            ys[i] = phi_shuffle_exact(scaled, k);
        }

        const double x_held = 1.21;
        const double c_held = std::sqrt(x_held);
        const ComplexMatrix scaled_held =
            scale_bottom_rows(scale_right_columns(a, k, c_held), k, c_held);
        CHECK(rel_diff(lagrange_eval(xs, ys, x_held), phi_shuffle_exact(scaled_held, k)) < 1e-8);

        const ComplexMatrix left = gather(a, iota_vec(n), iota_vec(n));
        const double subsets = static_cast<double>(binomial(n + k, k));
        const double constant = permanent(left).abs_squared / (subsets * subsets);
        CHECK(rel_diff(lagrange_eval(xs, ys, 0.0), constant) < 1e-8);
    }
}

TEST_CASE("scale covariance") {
    // Multiplying every entry by lambda scales each size-n permanent
    // magnitude, and hence the average, by |lambda|^(2n).
    const complex_d lambda(0.7, -0.4);
    for (std::uint64_t tag = 0; tag < 10; ++tag) {
        CAPTURE(tag);
        const ComplexMatrix a = gaussian(3, 5, 1000 + tag);
        ComplexMatrix scaled = a;
        for (int r = 0; r < a.rows(); ++r) {
            for (int c = 0; c < a.cols(); ++c) {
                scaled(r, c) = lambda * a(r, c);
            }
        }
        const double factor = std::pow(std::norm(lambda), 3);
        CHECK(rel_diff(phi_input_loss(scaled), factor * phi_input_loss(a)) < 1e-12);
        CHECK(rel_diff(phi_dark(scaled.transposed()),
                       factor * phi_dark(a.transposed())) < 1e-12);
    }
}

TEST_CASE("serial and parallel subset sums agree") {
    SUBCASE("column subsets") {
        const ComplexMatrix a = gaussian(4, 12, 17);
        CHECK(rel_diff(phi_input_loss(a, Exec::serial), phi_input_loss(a, Exec::parallel)) <
              1e-12);
    }
    SUBCASE("row subsets") {
        const ComplexMatrix a = gaussian(12, 4, 18);
        CHECK(rel_diff(phi_dark(a, Exec::serial), phi_dark(a, Exec::parallel)) <
              1e-12);
    }
    SUBCASE("aligned subsets merge identically in either mode") {
        const ComplexMatrix a = gaussian(6, 6, 19);
        CHECK(phi_shuffle_exact(a, 2, Exec::serial) == phi_shuffle_exact(a, 2, Exec::parallel));
    }
}

TEST_CASE("loss model validation rejects bad parameters") {
    CHECK_THROWS_AS(LossModel::input_loss(-1), std::invalid_argument);
    CHECK_THROWS_AS(LossModel::shuffle_mixture({}), std::invalid_argument);
    CHECK_THROWS_AS(LossModel::shuffle_mixture({0.5, -0.1, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(LossModel::shuffle_mixture({0.3, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(LossModel::shuffle_mixture({0.5, 0.5, 0.0}), std::invalid_argument);

    LossModel stray = LossModel::input_loss(1);
    stray.mixture_probs = {0.5, 0.5};
    CHECK_THROWS_AS(stray.validate(), std::invalid_argument);

    const ComplexMatrix square = gaussian(3, 3, 20);
    CHECK_THROWS_AS(phi_input_loss(gaussian(4, 3, 21)), std::invalid_argument);
    CHECK_THROWS_AS(phi_dark(gaussian(3, 4, 22)), std::invalid_argument);
    CHECK_THROWS_AS(phi_shuffle_exact(gaussian(3, 4, 23), 1), std::invalid_argument);
    CHECK_THROWS_AS(phi_shuffle_exact(square, -1), std::invalid_argument);
    CHECK_THROWS_AS(phi_shuffle_exact(square, 3), std::invalid_argument);
    CHECK_THROWS_AS(phi_shuffle_mixture(square, LossModel::shuffle(1)), std::invalid_argument);
    CHECK_THROWS_AS(phi_shuffle_mixture(gaussian(2, 2, 24),
                                        LossModel::shuffle_mixture({0.5, 0.0, 0.5})),
                    std::invalid_argument);
}

TEST_CASE("subset caps trip the numeric guard") {
    // Zero matrices keep construction cheap; the guard fires before any
    // permanent is evaluated.
    CHECK_THROWS_AS(phi_input_loss(ComplexMatrix(10, 40)), numeric_error);
    CHECK_THROWS_AS(phi_dark(ComplexMatrix(40, 10)), numeric_error);
    CHECK_THROWS_AS(phi_shuffle_exact(ComplexMatrix(30, 30), 15), numeric_error);
    CHECK_THROWS_AS(phi_shuffle_exact(ComplexMatrix(64, 64), 32), numeric_error);
}

TEST_CASE("row norm product") {
    SUBCASE("identity gives one") {
        CHECK(row_norm_product(ComplexMatrix::identity(5)) == 1.0);
    }
    SUBCASE("all-ones two by three gives nine") {
        ComplexMatrix ones(2, 3);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 3; ++c) {
                ones(r, c) = complex_d(1.0, 0.0);
            }
        }
        CHECK(row_norm_product(ones) == 9.0);
    }
    SUBCASE("dominates the permanent magnitude up to n factorial") {
        for (std::uint64_t tag = 0; tag < 200; ++tag) {
            const ComplexMatrix a = gaussian(4, 4, 1100 + tag);
            CHECK(permanent(a).abs_squared <= factorial(4) * row_norm_product(a) * (1 + 1e-12));
        }
    }
    SUBCASE("correlation with the column-subset average, reported") {
        // How tightly the row-norm scale tracks the subset average is an
        // empirical question; record the sample correlation without gating
        // the build on it.
        const int draws = 10000;
        std::vector<double> rs(draws);
        std::vector<double> phis(draws);
        for (int i = 0; i < draws; ++i) {
            const ComplexMatrix a = gaussian(2, 4, 2000 + static_cast<std::uint64_t>(i));
            rs[i] = row_norm_product(a);
            phis[i] = phi_input_loss(a);
        }
        double mean_r = 0.0;
        double mean_p = 0.0;
        for (int i = 0; i < draws; ++i) {
            mean_r += rs[i];
            mean_p += phis[i];
        }
        mean_r /= draws;
        mean_p /= draws;
        double cov = 0.0;
        double var_r = 0.0;
        double var_p = 0.0;
        for (int i = 0; i < draws; ++i) {
            cov += (rs[i] - mean_r) * (phis[i] - mean_p);
            var_r += (rs[i] - mean_r) * (rs[i] - mean_r);
            var_p += (phis[i] - mean_p) * (phis[i] - mean_p);
        }
        const double pearson = cov / std::sqrt(var_r * var_p);
        MESSAGE("sample Pearson correlation between the row-norm scale and the "
                "column-subset average over ",
                draws, " draws of 2x4 Gaussians: ", pearson);
        CHECK(std::isfinite(pearson));
        CHECK(std::abs(pearson) <= 1.0);
    }
}
