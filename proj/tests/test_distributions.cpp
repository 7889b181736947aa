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
#include <map>
#include <stdexcept>
#include <vector>

#include "lossyboson/distributions.hpp"
#include "lossyboson/ensembles.hpp"
#include "lossyboson/errors.hpp"
#include "lossyboson/loss_models.hpp"
#include "lossyboson/matrix.hpp"
#include "lossyboson/rng.hpp"
#include "lossyboson/states.hpp"
#include "support/quadrature.hpp"
#include "support/stats.hpp"

using namespace lossyboson;

namespace {

OccupationState state_of(std::vector<int> occ) {
    OccupationState s;
    s.occupations = std::move(occ);
    return s;
}

ComplexMatrix haar(int m, std::uint64_t tag) {
    return sample_haar_unitary(m, Seed{0xd151u, tag});
}

// 50:50 two-mode coupler; all entries have modulus 1/sqrt(2).
ComplexMatrix balanced_coupler() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix u(2, 2);
    u(0, 0) = complex_d(r, 0.0);
    u(0, 1) = complex_d(r, 0.0);
    u(1, 0) = complex_d(r, 0.0);
    u(1, 1) = complex_d(-r, 0.0);
    return u;
}

// Input state with ones on the first `n` of `m` modes.
OccupationState leading_ones(int m, int n) {
    std::vector<int> occ(m, 0);
    for (int i = 0; i < n; ++i) {
        occ[i] = 1;
    }
    return state_of(std::move(occ));
}

} // namespace

TEST_CASE("single-outcome probabilities") {
    SUBCASE("identity passes the input straight through") {
        const OccupationState s = state_of({1, 0, 1, 0});
        CHECK(ideal_outcome_prob(ComplexMatrix::identity(4), s, s) == doctest::Approx(1.0));
    }
    SUBCASE("balanced coupler shows photon bunching") {
        const ComplexMatrix u = balanced_coupler();
        const OccupationState in = state_of({1, 1});
        CHECK(ideal_outcome_prob(u, in, state_of({2, 0})) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(ideal_outcome_prob(u, in, state_of({0, 2})) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(ideal_outcome_prob(u, in, state_of({1, 1})) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("probabilities over the full outcome space sum to one") {
        for (int m = 2; m <= 6; ++m) {
            for (int n = 1; n <= 3 && n <= m; ++n) {
                const ComplexMatrix u = haar(m, static_cast<std::uint64_t>(10 * m + n));
                const OccupationState in = leading_ones(m, n);
                long double total = 0.0L;
                for (const OccupationState& out : enumerate_states(m, n)) {
                    total += ideal_outcome_prob(u, in, out);
                }
                CAPTURE(m);
                CAPTURE(n);
                CHECK(std::abs(static_cast<double>(total) - 1.0) < 1e-9);
            }
        }
    }
    SUBCASE("photon-number mismatch is rejected") {
        const ComplexMatrix u = haar(3, 1);
        CHECK_THROWS_AS(ideal_outcome_prob(u, state_of({1, 1, 0}), state_of({1, 0, 0})),
                        std::invalid_argument);
    }
}

TEST_CASE("lossy distribution") {
    SUBCASE("no loss coincides with the ideal distribution") {
        const ComplexMatrix u = haar(4, 2);
        const int n = 2;
        const OutcomeDistribution dist = lossy_distribution(u, n, 0);
        const OccupationState in = leading_ones(4, n);
        REQUIRE(dist.outcomes.size() == dist.probs.size());
        for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
            CHECK(dist.probs[i] ==
                  doctest::Approx(ideal_outcome_prob(u, in, dist.outcomes[i])).epsilon(1e-12));
        }
    }
    SUBCASE("one survivor of two averages the two source columns") {
        const ComplexMatrix u = haar(4, 3);
        const OutcomeDistribution dist = lossy_distribution(u, 1, 1);
        REQUIRE(dist.outcomes.size() == 4);
        for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
            // Single-photon outcomes are one per mode, so the probability of
            // landing in mode j is the average over the two source columns.
            int j = -1;
            for (int mode = 0; mode < 4; ++mode) {
                if (dist.outcomes[i].occupations[mode] == 1) {
                    j = mode;
                }
            }
            REQUIRE(j >= 0);
            const double expected = (std::norm(u(j, 0)) + std::norm(u(j, 1))) / 2.0;
            CHECK(dist.probs[i] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("normalization holds with collision outcomes included") {
        const int shapes[][3] = {{4, 2, 1}, {5, 2, 2}, {6, 2, 1}, {5, 3, 1}};
        for (std::uint64_t i = 0; i < 4; ++i) {
            const int m = shapes[i][0];
            const int n = shapes[i][1];
            const int k = shapes[i][2];
            CAPTURE(m);
            CAPTURE(n);
            CAPTURE(k);
            const OutcomeDistribution dist = lossy_distribution(haar(m, 100 + i), n, k);
            CHECK(dist.is_normalized(1e-9));
            for (double p : dist.probs) {
                CHECK(p >= 0.0);
            }
        }
    }
    SUBCASE("equals the uniform mixture over surviving subsets") {
        const int m = 6;
        const int n = 2;
        const ComplexMatrix u = haar(m, 7);
        const OutcomeDistribution dist = lossy_distribution(u, n, 1);

        // Survivor patterns: photons stay in two of the first three modes.
        const std::vector<OccupationState> inputs = {
            state_of({1, 1, 0, 0, 0, 0}),
            state_of({1, 0, 1, 0, 0, 0}),
            state_of({0, 1, 1, 0, 0, 0}),
        };
        for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
            long double mix = 0.0L;
            for (const OccupationState& in : inputs) {
                mix += ideal_outcome_prob(u, in, dist.outcomes[i]);
            }
            mix /= static_cast<long double>(inputs.size());
            CHECK(dist.probs[i] == doctest::Approx(static_cast<double>(mix)).epsilon(1e-12));
        }
    }
    SUBCASE("collision-free outcome probabilities match the column-subset average") {
        const int m = 6;
        const int n = 2;
        const int k = 1;
        const ComplexMatrix u = haar(m, 8);
        const OutcomeDistribution dist = lossy_distribution(u, n, k);
        int checked = 0;
        for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
            if (!dist.outcomes[i].is_collision_free()) {
                continue;
            }
            // Rows picked by the outcome modes, columns by the n+k sources.
            const std::vector<int> rows = dist.outcomes[i].mode_indices();
            const std::vector<int> cols = {0, 1, 2};
            const double phi = phi_input_loss(select_rows_columns(u, rows, cols));
            CHECK(dist.probs[i] == doctest::Approx(phi).epsilon(1e-12));
            ++checked;
        }
        CHECK(checked == 15);
    }
    SUBCASE("restricting to collision-free outcomes renormalizes") {
        const OutcomeDistribution dist = lossy_distribution(haar(5, 9), 2, 1);
        const OutcomeDistribution cf = restrict_collision_free(dist);
        CHECK(cf.outcomes.size() < dist.outcomes.size());
        CHECK(cf.is_normalized(1e-9));
        for (const OccupationState& s : cf.outcomes) {
            CHECK(s.is_collision_free());
        }
        const OutcomeDistribution raw = restrict_collision_free(dist, /*renormalize=*/false);
        double total = 0.0;
        for (double p : raw.probs) {
            total += p;
        }
        CHECK(total < 1.0);
        CHECK(total > 0.0);
    }
    SUBCASE("outcome-count cap trips the numeric guard") {
        CHECK_THROWS_AS(lossy_distribution(ComplexMatrix::identity(30), 8, 0), numeric_error);
    }
}

TEST_CASE("outcome sampling") {
    SUBCASE("point mass always returns its outcome") {
        OutcomeDistribution dist;
        dist.outcomes = {state_of({1, 0}), state_of({0, 1})};
        dist.probs = {0.0, 1.0};
        for (std::uint64_t i = 0; i < 50; ++i) {
            CHECK(sample_outcome(dist, Seed{i, 0}).occupations == std::vector<int>{0, 1});
        }
    }
    SUBCASE("same seed, same draw") {
        const OutcomeDistribution dist = lossy_distribution(haar(4, 10), 2, 1);
        const Seed seed{42, 7};
        CHECK(sample_outcome(dist, seed).occupations == sample_outcome(dist, seed).occupations);
    }
    SUBCASE("uniform four-way frequencies") {
        OutcomeDistribution dist;
        for (int mode = 0; mode < 4; ++mode) {
            std::vector<int> occ(4, 0);
            occ[mode] = 1;
            dist.outcomes.push_back(state_of(std::move(occ)));
            dist.probs.push_back(0.25);
        }
        const int draws = 100000;
        std::vector<long> counts(4, 0);
        for (int i = 0; i < draws; ++i) {
            const OccupationState s =
                sample_outcome(dist, Seed{0xabcu, static_cast<std::uint64_t>(i)});
            for (int mode = 0; mode < 4; ++mode) {
                if (s.occupations[mode] == 1) {
                    ++counts[mode];
                }
            }
        }
        for (int mode = 0; mode < 4; ++mode) {
            CHECK(std::abs(static_cast<double>(counts[mode]) / draws - 0.25) < 0.01);
        }
    }
    SUBCASE("draws pass a goodness-of-fit test against the exact distribution") {
        const OutcomeDistribution dist = lossy_distribution(haar(4, 11), 2, 1);
        const int draws = 100000;
        std::vector<long> counts(dist.outcomes.size(), 0);
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
            index[dist.outcomes[i].occupations] = i;
        }
        for (int i = 0; i < draws; ++i) {
            const OccupationState s =
                sample_outcome(dist, Seed{0xf00du, static_cast<std::uint64_t>(i)});
            ++counts[index.at(s.occupations)];
        }
        const double p = testsupport::goodness_of_fit_p_value(counts, dist.probs, draws);
        CAPTURE(p);
        CHECK(p > 0.001);
    }
    SUBCASE("unnormalized distributions are rejected") {
        OutcomeDistribution dist;
        dist.outcomes = {state_of({1, 0}), state_of({0, 1})};
        dist.probs = {0.4, 0.4};
        CHECK_THROWS_AS(sample_outcome(dist, Seed{1, 1}), std::invalid_argument);
    }
}

TEST_CASE("divergence between scaled Gaussian ensembles") {
    SUBCASE("no scaling, no divergence") {
        CHECK(kl_scaled_gaussian(3, 2, 1.0) == 0.0);
    }
    SUBCASE("closed form at a hand-checked point") {
        const double expected = 2.0 * (1.0 / 1.21 - 1.0 + 2.0 * std::log(1.1));
        CHECK(kl_scaled_gaussian(2, 1, 1.1) == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("matches numerical integration of the per-entry divergence") {
        // One scaled complex Gaussian coordinate, in polar form: the radius
        // density under the unscaled ensemble is 2r exp(-r^2), and the
        // log-density ratio against the c-scaled ensemble is
        // 2 ln c + r^2 (1/c^2 - 1). The tail beyond r = 12 is below 1e-60.
        for (double c : {0.9, 0.99, 1.01, 1.1}) {
            CAPTURE(c);
            const double per_entry = testsupport::integrate(
                [c](double r) {
                    const double log_ratio =
                        2.0 * std::log(c) + r * r * (1.0 / (c * c) - 1.0);
                    return 2.0 * r * std::exp(-r * r) * log_ratio;
                },
                0.0, 12.0);
            for (int n : {1, 3}) {
                for (int k : {1, 2}) {
                    CHECK(std::abs(kl_scaled_gaussian(n, k, c) - n * k * per_entry) < 1e-6);
                }
            }
        }
    }
    SUBCASE("small offsets follow the quadratic expansion") {
        const double a = 1e-3;
        for (double c : {1.0 + a, 1.0 - a}) {
            const int n = 4;
            const int k = 2;
            const double ratio = kl_scaled_gaussian(n, k, c) / (2.0 * n * k * a * a);
            CHECK(std::abs(ratio - 1.0) < 0.01);
        }
    }
    SUBCASE("square-root bound arithmetic") {
        CHECK(pinsker_tv_bound(0.0) == 0.0);
        CHECK(pinsker_tv_bound(2.0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(pinsker_tv_bound(0.08) == doctest::Approx(0.2).epsilon(1e-12));
        CHECK_THROWS_AS(pinsker_tv_bound(-0.1), std::invalid_argument);
    }
    SUBCASE("largest admissible scale offset") {
        CHECK(max_c_offset(4, 1, 0.1) == doctest::Approx(0.05).epsilon(1e-15));
        CHECK(max_c_offset(1, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
        double prev = max_c_offset(1, 1, 0.3);
        for (int nk : {2, 4, 9, 16}) {
            const double cur = max_c_offset(nk, 1, 0.3);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("Monte Carlo total variation") {
    SUBCASE("identical ensembles give exactly zero") {
        const TvEstimate tv = tv_monte_carlo({3, 2, 1.0}, 20000, Seed{5, 0});
        CHECK(tv.estimate == 0.0);
        CHECK(tv.std_error == 0.0);
    }
    SUBCASE("deterministic for a fixed seed") {
        const TvEstimate a = tv_monte_carlo({3, 2, 1.05}, 20000, Seed{6, 3});
        const TvEstimate b = tv_monte_carlo({3, 2, 1.05}, 20000, Seed{6, 3});
        CHECK(a.estimate == b.estimate);
        CHECK(a.std_error == b.std_error);
        const TvEstimate c = tv_monte_carlo({3, 2, 1.05}, 20000, Seed{6, 4});
        CHECK(a.estimate != c.estimate);
    }
    SUBCASE("estimate stays under the square-root bound") {
        const int grid_n[] = {2, 3, 4};
        const double grid_c[] = {0.95, 1.05};
        for (int n : grid_n) {
            for (double c : grid_c) {
                CAPTURE(n);
                CAPTURE(c);
                const TvEstimate tv = tv_monte_carlo({n, 2, c}, 20000, Seed{7, 0});
                const double bound = pinsker_tv_bound(kl_scaled_gaussian(n, 2, c));
                CHECK(tv.estimate <= bound + 3.0 * tv.std_error);
                CHECK(tv.estimate >= 0.0);
            }
        }
    }
    SUBCASE("larger scale offsets separate the ensembles more") {
        const TvEstimate far = tv_monte_carlo({3, 2, 1.1}, 40000, Seed{8, 0});
        const TvEstimate near = tv_monte_carlo({3, 2, 1.01}, 40000, Seed{8, 1});
        const double sigma = std::sqrt(far.std_error * far.std_error +
                                       near.std_error * near.std_error);
        CHECK(far.estimate - near.estimate > 3.0 * sigma);
    }
    SUBCASE("too few trials are rejected") {
        CHECK_THROWS_AS(tv_monte_carlo({2, 1, 1.05}, 100, Seed{9, 0}), std::invalid_argument);
    }
}
