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

#ifndef LOSSYBOSON_REDUCTION_HPP
#define LOSSYBOSON_REDUCTION_HPP

#include <span>
#include <vector>

#include "lossyboson/loss_models.hpp"
#include "lossyboson/matrix.hpp"
#include "lossyboson/rng.hpp"

namespace lossyboson {

/// How the simulated oracle perturbs the exact averaged-submatrix value.
enum class NoiseKind {
    none,        ///< returns the exact value
    uniform,     ///< adds a uniform error in [-budget, +budget]
    adversarial, ///< adds exactly +-budget, alternating sign per call
};

/// Noise configuration for the simulated oracle. The additive budget is
/// epsilon_prime * n! where n is the model's photon number.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double epsilon_prime = 0.0;
};

/**
 * @brief Column-scaling factors at which the oracle is queried.
 *
 * The averaged-submatrix value of the scaled embedding is a polynomial in
 * x = c^2; x_values are the equally spaced fit abscissas in [1-a, 1+a] and
 * c_values their square roots.
 */
struct NodeSet {
    std::vector<double> x_values;
    std::vector<double> c_values;
    double half_width = 0.0;
};

/// The three variance figures for a polynomial fit through noisy values.
struct VarianceBound {
    /// (d+1)^2 * (budget)^2 * B^2 with B the closed-form ceiling below.
    /// Zero when the budget is zero; +infinity at degree 1, where the odd
    /// ceiling diverges.
    double explicit_bound = 0.0;
    /// The (budget)^2 / a^(2d) scaling form; coarse but shows the growth law.
    double asymptotic = 0.0;
    /// B itself: spaced_node_bound_ceiling at this degree and half-width.
    double inverse_norm_bound = 0.0;
};

/// Everything a single recovery run produces, ready for serialization.
struct ReductionReport {
    int n = 0;
    int k = 0;
    LossKind model_kind = LossKind::input_loss;
    NoiseKind noise_kind = NoiseKind::none;
    double epsilon = 0.0;
    double delta = 0.0;
    double epsilon_prime = 0.0;
    Seed seed;

    NodeSet nodes;
    std::vector<double> oracle_values;
    double estimate = 0.0;
    double truth_abs_squared = 0.0;
    double error_units_nfact = 0.0; ///< |estimate - truth| / n!
    bool succeeded = false;         ///< error_units_nfact <= epsilon
    double variance_bound = 0.0;
    double gautschi_norm_bound = 0.0;
    double vandermonde_condition = 0.0;
};

/// [X | Y] with Y an n-by-k complex Gaussian block drawn from the seed.
/// Same seed, same embedding.
ComplexMatrix embed(const ComplexMatrix& x, int k, Seed seed);

/// [X; Y] with Y a k-by-n Gaussian block below X.
ComplexMatrix embed_tall(const ComplexMatrix& x, int k, Seed seed);

/// [[X, Y], [V, W]]: X padded to side n+k with Gaussian blocks.
ComplexMatrix embed_square(const ComplexMatrix& x, int k, Seed seed);

/**
 * @brief degree+1 fit abscissas equally spaced in [1-a, 1+a], a = delta/sqrt(n*k).
 *
 * extra_nodes adds that many additional equally spaced abscissas on the same
 * interval (an overdetermined fit). Throws numeric_error when the implied
 * spacing drops below 1e-12 — the fit would be numerically meaningless.
 */
NodeSet interpolation_nodes(int n, int k, double delta, int degree, int extra_nodes = 0);

/// Vandermonde matrix of the node abscissas: row i is (1, x_i, x_i^2, ...),
/// with degree+1 columns. The one-argument form builds the square system.
ComplexMatrix build_vandermonde(const NodeSet& nodes, int degree);
ComplexMatrix build_vandermonde(const NodeSet& nodes);

/// Infinity-norm condition number of a real square matrix stored as complex.
double condition_number_inf(const ComplexMatrix& m);

/**
 * @brief Constant coefficient of the least-squares polynomial through
 * (x_i, w_i).
 *
 * Square systems solve by partial-pivot elimination; overdetermined ones go
 * through the normal equations. Extended-precision arithmetic throughout,
 * and a condition number above 1e14 raises numeric_error instead of
 * returning digits that would all be noise.
 */
double estimate_beta0(const ComplexMatrix& vandermonde, std::span<const double> values);

/**
 * @brief Node-product bound on the max norm of an inverse Vandermonde:
 * max_j prod_{i != j} (1 + |x_j|) / |x_j - x_i|.
 *
 * A single node returns 1 + |x| (the empty product made safe), which still
 * dominates the true inverse norm of 1.
 */
double gautschi_bound(const NodeSet& nodes);

/**
 * @brief Closed-form ceiling for the node-product bound on degree+1 equally
 * spaced abscissas straddling 1 with half-width a.
 *
 * (2e/a)^d / (pi d) for even degree d; the odd-degree form carries a
 * Stirling correction and is +infinity at d = 1, where the correction's
 * denominator vanishes. Degree 0 gives 1.
 */
double spaced_node_bound_ceiling(int degree, double half_width);

/// Variance figures for an additive oracle error budget of
/// epsilon_prime * n! per query at the given fit degree and node half-width.
VarianceBound variance_bound(double epsilon_prime, int n, int degree, double half_width);

/**
 * @brief Largest per-query oracle error (in units of n!) that still lets the
 * recovery meet a final accuracy of epsilon * n! with confidence 1 - delta:
 * epsilon * delta^(k + 1/2) * k^(k/2) / (n^(k/2) * (n+k)^k), with 0^0 = 1.
 */
double epsilon_prime_budget(int n, int k, double epsilon, double delta);

/**
 * @brief The simulated noisy oracle: the exact averaged-submatrix value for
 * the model, perturbed per the noise spec.
 *
 * The uniform perturbation is drawn from the seed; the adversarial one is
 * +budget when seed.stream is even and -budget when odd, which lets a
 * caller querying consecutive streams realize the worst-case alternation.
 */
double noisy_phi_oracle(const ComplexMatrix& a, const LossModel& model,
                        const NoiseSpec& noise, Seed seed);

/**
 * @brief Recovers |Per(X)|^2 by querying the noisy oracle at scaled
 * embeddings and unfolding the constant polynomial coefficient.
 *
 * X is square with side n; k, the model, and the noise spec describe the
 * experiment; epsilon and delta set the target accuracy (in units of n!)
 * and failure probability, which size the node interval. extra_nodes adds
 * abscissas beyond the minimum degree+1. The report carries the estimate,
 * the exact truth for comparison, and every diagnostic of the fit.
 */
ReductionReport recover_permanent_squared(const ComplexMatrix& x, int k,
                                          const LossModel& model, const NoiseSpec& noise,
                                          double epsilon, double delta, Seed seed,
                                          int extra_nodes = 0);

} // namespace lossyboson

#endif // LOSSYBOSON_REDUCTION_HPP
