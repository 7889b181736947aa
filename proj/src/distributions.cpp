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

#include "lossyboson/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "lossyboson/errors.hpp"
#include "lossyboson/permanent.hpp"

namespace lossyboson {

namespace {

constexpr std::uint64_t DISTRIBUTION_CAP = 10'000'000;
constexpr std::uint64_t TV_CHUNKS = 64;
constexpr std::uint64_t TV_STREAM_TAG = 0x7456d21b90c3a8f1ULL;

double occupation_factorial_product(const OccupationState& s) {
    double prod = 1.0;
    for (int occ : s.occupations) {
        prod *= factorial(occ);
    }
    return prod;
}

} // namespace

bool OutcomeDistribution::is_normalized(double tol) const {
    if (outcomes.size() != probs.size()) {
        return false;
    }
    long double sum = 0.0L;
    for (double p : probs) {
        if (p < 0.0 || !std::isfinite(p)) {
            return false;
        }
        sum += p;
    }
    return std::abs(static_cast<double>(sum) - 1.0) <= tol;
}

double ideal_outcome_prob(const ComplexMatrix& u,
                          const OccupationState& input,
                          const OccupationState& output) {
    if (input.total() != output.total()) {
        throw std::invalid_argument("photon numbers differ: input carries " +
                                    std::to_string(input.total()) + ", output " +
                                    std::to_string(output.total()));
    }
    const ComplexMatrix sub = submatrix_st(u, input, output);
    const double denom =
        occupation_factorial_product(input) * occupation_factorial_product(output);
    return permanent(sub).abs_squared / denom;
}

OutcomeDistribution lossy_distribution(const ComplexMatrix& u, int n, int k) {
    if (n < 1 || k < 0) {
        throw std::invalid_argument("need n >= 1 photons and k >= 0 extra sources");
    }
    const int m = u.rows();
    if (!u.is_square() || m < n + k) {
        throw std::invalid_argument("interferometer must be square with at least n+k modes");
    }

    const std::uint64_t outcome_count = binomial(m + n - 1, n);
    const std::uint64_t subset_count = binomial(n + k, n);
    if (outcome_count * subset_count > DISTRIBUTION_CAP) {
        throw numeric_error("distribution table needs " +
                            std::to_string(outcome_count * subset_count) +
                            " transition terms, above the cap of " +
                            std::to_string(DISTRIBUTION_CAP));
    }

    OutcomeDistribution dist;
    dist.outcomes = enumerate_states(m, n, /*collision_free=*/false);
    dist.probs.assign(dist.outcomes.size(), 0.0);

    // Surviving sources occupy a uniformly random n-subset of the first
    // n+k modes; average the ideal distributions over those inputs.
    const std::vector<OccupationState> survivor_patterns =
        enumerate_states(n + k, n, /*collision_free=*/true);
    const double weight = 1.0 / static_cast<double>(subset_count);

    for (const OccupationState& pattern : survivor_patterns) {
        OccupationState input;
        input.occupations.assign(m, 0);
        std::copy(pattern.occupations.begin(), pattern.occupations.end(),
                  input.occupations.begin());
        for (std::size_t t = 0; t < dist.outcomes.size(); ++t) {
            dist.probs[t] += weight * ideal_outcome_prob(u, input, dist.outcomes[t]);
        }
    }
    return dist;
}

OutcomeDistribution restrict_collision_free(const OutcomeDistribution& dist, bool renormalize) {
    OutcomeDistribution out;
    long double mass = 0.0L;
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        if (dist.outcomes[i].is_collision_free()) {
            out.outcomes.push_back(dist.outcomes[i]);
            out.probs.push_back(dist.probs[i]);
            mass += dist.probs[i];
        }
    }
    if (renormalize) {
        if (!(mass > 0.0L)) {
            throw std::invalid_argument("no probability mass on collision-free outcomes");
        }
        for (double& p : out.probs) {
            p /= static_cast<double>(mass);
        }
    }
    return out;
}

OccupationState sample_outcome(const OutcomeDistribution& dist, Seed seed) {
    if (dist.outcomes.empty()) {
        throw std::invalid_argument("cannot sample from an empty distribution");
    }
    if (!dist.is_normalized()) {
        throw std::invalid_argument("distribution is not normalized");
    }
    CounterRng rng(seed);
    const double u = rng.uniform01();
    long double cdf = 0.0L;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        cdf += dist.probs[i];
        if (u < static_cast<double>(cdf)) {
            return dist.outcomes[i];
        }
    }
    // Rounding can leave the final cumulative fractionally below u.
    return dist.outcomes.back();
}

double kl_scaled_gaussian(int n, int k, double c) {
    if (n < 1 || k < 1) {
        throw std::invalid_argument("need n >= 1 and k >= 1 scaled entries");
    }
    if (!(c > 0.0)) {
        throw std::invalid_argument("scale factor must be positive");
    }
    return static_cast<double>(n) * static_cast<double>(k) *
           (1.0 / (c * c) - 1.0 + 2.0 * std::log(c));
}

double pinsker_tv_bound(double kl) {
    if (kl < 0.0) {
        throw std::invalid_argument("divergence must be non-negative");
    }
    return std::sqrt(kl / 2.0);
}

double max_c_offset(int n, int k, double delta) {
    if (n < 1 || k < 1) {
        throw std::invalid_argument("need n >= 1 and k >= 1 scaled entries");
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("target distance must lie in (0, 1)");
    }
    return delta / std::sqrt(static_cast<double>(n) * static_cast<double>(k));
}

TvEstimate tv_monte_carlo(const GaussianEnsembleSpec& spec, long trials, Seed seed) {
    if (spec.n < 1 || spec.k < 1) {
        throw std::invalid_argument("need n >= 1 and k >= 1 scaled entries");
    }
    if (!(spec.c > 0.0)) {
        throw std::invalid_argument("scale factor must be positive");
    }
    if (trials < 10'000) {
        throw std::invalid_argument("need at least 10000 trials for a stable estimate");
    }

    const int scaled = spec.n * spec.k;
    const double log_det_term = -2.0 * static_cast<double>(scaled) * std::log(spec.c);
    const double rate = 1.0 / (spec.c * spec.c) - 1.0;

    // Density ratio q/p depends only on the total squared magnitude of the
    // scaled coordinates, so each trial draws just those.
    const std::uint64_t total = static_cast<std::uint64_t>(trials);
    const std::uint64_t base = total / TV_CHUNKS;
    const std::uint64_t rem = total % TV_CHUNKS;

    std::vector<long double> sums(TV_CHUNKS, 0.0L);
    std::vector<long double> sq_sums(TV_CHUNKS, 0.0L);

#pragma omp parallel for schedule(static)
    for (std::int64_t chunk = 0; chunk < static_cast<std::int64_t>(TV_CHUNKS); ++chunk) {
        const std::uint64_t u = static_cast<std::uint64_t>(chunk);
        const std::uint64_t count = base + (u < rem ? 1 : 0);
        CounterRng rng(derive_seed(seed, TV_STREAM_TAG, u));
        long double sum = 0.0L;
        long double sq = 0.0L;
        for (std::uint64_t t = 0; t < count; ++t) {
            double mag_sq = 0.0;
            for (int i = 0; i < scaled; ++i) {
                mag_sq += std::norm(rng.complex_gaussian());
            }
            const double ratio = std::exp(log_det_term - rate * mag_sq);
            const double integrand = ratio < 1.0 ? 1.0 - ratio : 0.0;
            sum += integrand;
            sq += static_cast<long double>(integrand) * integrand;
        }
        sums[u] = sum;
        sq_sums[u] = sq;
    }

    long double sum = 0.0L;
    long double sq = 0.0L;
    for (std::uint64_t u = 0; u < TV_CHUNKS; ++u) {
        sum += sums[u];
        sq += sq_sums[u];
    }

    const long double n_ld = static_cast<long double>(total);
    const long double mean = sum / n_ld;
    const long double var = (sq - n_ld * mean * mean) / (n_ld - 1.0L);

    TvEstimate out;
    out.estimate = static_cast<double>(mean);
    out.std_error = static_cast<double>(std::sqrt(std::max(var, 0.0L) / n_ld));
    return out;
}

} // namespace lossyboson
