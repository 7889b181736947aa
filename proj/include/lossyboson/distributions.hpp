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

#ifndef LOSSYBOSON_DISTRIBUTIONS_HPP
#define LOSSYBOSON_DISTRIBUTIONS_HPP

#include <vector>

#include "lossyboson/ensembles.hpp"
#include "lossyboson/matrix.hpp"
#include "lossyboson/rng.hpp"
#include "lossyboson/states.hpp"

namespace lossyboson {

/// A finite distribution over photon-count outcomes, outcomes[i] occurring
/// with probability probs[i].
struct OutcomeDistribution {
    std::vector<OccupationState> outcomes;
    std::vector<double> probs;

    bool is_normalized(double tol = 1e-9) const;
};

/**
 * @brief Probability of observing `output` when `input` enters the
 * interferometer u.
 *
 * The squared permanent of the transition submatrix, divided by the product
 * of factorials of the occupation numbers on both sides. Throws if the two
 * states carry different photon numbers.
 */
double ideal_outcome_prob(const ComplexMatrix& u,
                          const OccupationState& input,
                          const OccupationState& output);

/**
 * @brief Output distribution when n of the first n+k sources survive.
 *
 * The surviving subset is uniform over the C(n+k, n) possibilities, so the
 * result is the uniform mixture of the ideal distributions for each
 * collision-free n-photon input on the first n+k modes. Outcome count times
 * subset count is capped at 1e7.
 */
OutcomeDistribution lossy_distribution(const ComplexMatrix& u, int n, int k);

/// The sub-distribution on collision-free outcomes, renormalized by default.
OutcomeDistribution restrict_collision_free(const OutcomeDistribution& dist,
                                            bool renormalize = true);

/// One draw from the distribution via its cumulative table.
OccupationState sample_outcome(const OutcomeDistribution& dist, Seed seed);

/**
 * @brief Divergence between a standard complex Gaussian ensemble and one
 * with n*k entries scaled by c, in closed form: n*k*(1/c^2 - 1 + 2*ln c).
 */
double kl_scaled_gaussian(int n, int k, double c);

/// Total-variation bound sqrt(kl/2) implied by a KL divergence.
double pinsker_tv_bound(double kl);

/// Largest scale offset `a` such that scaling n*k entries by any c with
/// |c - 1| <= a keeps the ensembles within total variation of order delta:
/// a = delta / sqrt(n*k).
double max_c_offset(int n, int k, double delta);

/// Describes the pair of Gaussian ensembles compared by tv_monte_carlo:
/// n*k entries scaled by c versus unscaled.
struct GaussianEnsembleSpec {
    int n = 0;
    int k = 0;
    double c = 1.0;
};

/// A Monte Carlo estimate together with its standard error.
struct TvEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/**
 * @brief Monte Carlo total variation between the scaled and unscaled
 * Gaussian ensembles.
 *
 * Uses the density-ratio form E_p[max(0, 1 - q/p)], which only involves the
 * n*k scaled coordinates. Trials are cut into a fixed number of independent
 * sub-streams merged in fixed order, so the estimate depends only on
 * (seed, trials), not on the thread count.
 */
TvEstimate tv_monte_carlo(const GaussianEnsembleSpec& spec, long trials, Seed seed);

} // namespace lossyboson

#endif // LOSSYBOSON_DISTRIBUTIONS_HPP
