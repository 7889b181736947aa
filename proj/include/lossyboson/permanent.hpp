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

#ifndef LOSSYBOSON_PERMANENT_HPP
#define LOSSYBOSON_PERMANENT_HPP

#include "lossyboson/matrix.hpp"

namespace lossyboson {

/**
 * @brief Execution strategy for the heavy kernels.
 *
 * serial runs a single deterministic sweep. parallel partitions the same
 * sweep into a fixed number of segments combined in a fixed pairwise order,
 * so results do not depend on the thread count — only on the flag itself.
 */
enum class Exec {
    serial,
    parallel,
};

/// A permanent together with its squared magnitude, which is the quantity
/// most probability formulas actually consume.
struct PermanentValue {
    complex_d value;
    double abs_squared = 0.0;
};

/**
 * @brief Exact permanent of a square complex matrix.
 *
 * Evaluates the +/-1 exterior-sum formula with a Gray-code walk, updating
 * column sums incrementally: O(2^n * n) time, O(n) space. Accumulation runs
 * in extended precision. Dimensions above 20 are rejected because the
 * double-precision error budget is gone by then.
 */
PermanentValue permanent(const ComplexMatrix& m, Exec exec = Exec::serial);

/**
 * @brief Permanent by direct sum over all n! permutations.
 *
 * Exponentially slower than the Gray-code kernel and kept deliberately
 * independent of it as a cross-check; limited to n <= 9.
 */
PermanentValue permanent_naive(const ComplexMatrix& m);

} // namespace lossyboson

#endif // LOSSYBOSON_PERMANENT_HPP
