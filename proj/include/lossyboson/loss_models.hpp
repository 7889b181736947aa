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

#ifndef LOSSYBOSON_LOSS_MODELS_HPP
#define LOSSYBOSON_LOSS_MODELS_HPP

#include <vector>

#include "lossyboson/matrix.hpp"
#include "lossyboson/permanent.hpp"

namespace lossyboson {

/// Which photon-loss mechanism an experiment models.
enum class LossKind {
    input_loss,      ///< a uniformly random subset of the sources fires
    dark_counts,     ///< a uniformly random subset of the detectors clicks spuriously
    shuffle_exact,   ///< exactly k photons vanish between sources and detectors
    shuffle_mixture, ///< the number of vanished photons is itself random
};

/**
 * @brief A loss mechanism plus its parameters.
 *
 * k is the number of excess sources / excess detectors / lost photons. For
 * shuffle_mixture, mixture_probs holds the distribution p_0..p_k of the
 * number of losses; the top weight p_k must be positive because recovery
 * divides by it.
 */
struct LossModel {
    LossKind kind = LossKind::input_loss;
    int k = 0;
    std::vector<double> mixture_probs;

    static LossModel input_loss(int k);
    static LossModel dark_counts(int k);
    static LossModel shuffle(int k);
    static LossModel shuffle_mixture(std::vector<double> probs);

    /// Throws std::invalid_argument on negative k, or mixture weights that
    /// are negative, fail to sum to 1, or end in a zero top weight.
    void validate() const;
};

/**
 * @brief Average of |Per|^2 over all square column subsets.
 *
 * For an n-by-(n+k) matrix, averages |Per(A_S)|^2 over the C(n+k, n) ways S
 * of keeping n columns. This is the quantity a lost-photon experiment
 * concentrates around when k of n+k input photons survive. The subset count
 * is capped at 1e6.
 */
double phi_input_loss(const ComplexMatrix& a, Exec exec = Exec::serial);

/// Row-subset counterpart of phi_input_loss for an (n+k)-by-n matrix;
/// equals phi_input_loss of the transpose.
double phi_dark(const ComplexMatrix& a, Exec exec = Exec::serial);

/**
 * @brief Average of |Per|^2 over aligned row and column subsets.
 *
 * For a square matrix of side s, averages over all pairs of row subsets and
 * column subsets of size s - dropped; the pair count C(s, s-dropped)^2 is
 * capped at 1e6. Models exactly `dropped` photons going missing in flight.
 */
double phi_shuffle_exact(const ComplexMatrix& a, int dropped, Exec exec = Exec::serial);

/// Mixture of phi_shuffle_exact values weighted by model.mixture_probs.
double phi_shuffle_mixture(const ComplexMatrix& a, const LossModel& model,
                           Exec exec = Exec::serial);

/// Product over rows of the squared row norm. Satisfies
/// |Per(A)|^2 <= n! * row_norm_product(A), making it the natural magnitude
/// scale for oracle error budgets.
double row_norm_product(const ComplexMatrix& a);

} // namespace lossyboson

#endif // LOSSYBOSON_LOSS_MODELS_HPP
