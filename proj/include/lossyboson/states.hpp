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

#ifndef LOSSYBOSON_STATES_HPP
#define LOSSYBOSON_STATES_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace lossyboson {

/**
 * @brief Photon occupation numbers, one entry per optical mode.
 *
 * The number of modes is occupations.size(); the photon number is the entry
 * sum. A state with every entry 0 or 1 is collision-free.
 */
struct OccupationState {
    std::vector<int> occupations;

    int modes() const { return static_cast<int>(occupations.size()); }
    int total() const;
    bool is_collision_free() const;

    /// Indices of the occupied modes, with multiplicity (e.g. (2,0,1) -> 0,0,2).
    /// This is exactly the row/column multiset a state selects from a matrix.
    std::vector<int> mode_indices() const;

    friend auto operator<=>(const OccupationState&, const OccupationState&) = default;
};

/// Exact binomial coefficient; throws numeric_error if the value would
/// overflow an unsigned 64-bit integer.
std::uint64_t binomial(int n, int r);

/// n! as a double. Exact up to 20!, within 1 ulp afterwards.
double factorial(int n);

/**
 * @brief All n-photon states on m modes in descending lexicographic order
 * of the occupation vector.
 *
 * With collision_free set, restricts to 0/1 occupations (size C(m, n));
 * otherwise enumerates every state (size C(m+n-1, n)). Throws numeric_error
 * before allocating if the count exceeds the cap.
 */
std::vector<OccupationState> enumerate_states(int modes, int photons,
                                              bool collision_free = false,
                                              std::uint64_t cap = 10'000'000);

/**
 * @brief Advances a sorted index subset of {0..m-1} to its lexicographic
 * successor. Returns false (leaving the subset at the final position) once
 * the last subset has been visited.
 */
bool next_index_subset(std::span<int> subset, int m);

/// Subset of {0..m-1} of size r with the given lexicographic rank.
std::vector<int> index_subset_by_rank(int m, int r, std::uint64_t rank);

} // namespace lossyboson

#endif // LOSSYBOSON_STATES_HPP
