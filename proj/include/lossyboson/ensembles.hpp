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

#ifndef LOSSYBOSON_ENSEMBLES_HPP
#define LOSSYBOSON_ENSEMBLES_HPP

#include "lossyboson/matrix.hpp"
#include "lossyboson/rng.hpp"
#include "lossyboson/states.hpp"

namespace lossyboson {

/// Matrix of i.i.d. standard complex Gaussian entries (unit total variance
/// per entry), filled row-major from the seeded stream.
ComplexMatrix sample_gaussian_matrix(int rows, int cols, Seed seed);

/**
 * @brief Haar-random m-by-m unitary.
 *
 * Draws a complex Gaussian matrix and orthonormalizes its columns with
 * modified Gram-Schmidt (two passes per column for numerical orthogonality).
 * Each projection coefficient leaves a positive real diagonal in the implied
 * triangular factor, which is exactly the normalization that makes the
 * result Haar-distributed rather than merely unitary.
 */
ComplexMatrix sample_haar_unitary(int m, Seed seed);

/// Max entrywise deviation of U*U^dagger from the identity.
double unitarity_defect(const ComplexMatrix& u);

/**
 * @brief The transition submatrix between an input and an output state.
 *
 * Takes the columns of U indexed by the occupied input modes and the rows
 * indexed by the occupied output modes, with multiplicity; the result is
 * t-by-s for photon numbers t and s. Multiply-occupied modes repeat their
 * row or column, so the shape depends on photon numbers, not mode counts.
 */
ComplexMatrix submatrix_st(const ComplexMatrix& u,
                           const OccupationState& input,
                           const OccupationState& output);

/// Copy of A with its rightmost k columns multiplied by c.
ComplexMatrix scale_right_columns(const ComplexMatrix& a, int k, double c);

/// Copy of A with its bottom k rows multiplied by c.
ComplexMatrix scale_bottom_rows(const ComplexMatrix& a, int k, double c);

} // namespace lossyboson

#endif // LOSSYBOSON_ENSEMBLES_HPP
