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

#include "lossyboson/states.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lossyboson/errors.hpp"

namespace lossyboson {

int OccupationState::total() const {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
}

bool OccupationState::is_collision_free() const {
    return std::all_of(occupations.begin(), occupations.end(),
                       [](int n) { return n == 0 || n == 1; });
}

std::vector<int> OccupationState::mode_indices() const {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(total()));
    for (int mode = 0; mode < modes(); ++mode) {
        for (int rep = 0; rep < occupations[mode]; ++rep) {
            idx.push_back(mode);
        }
    }
    return idx;
}

std::uint64_t binomial(int n, int r) {
    if (n < 0 || r < 0) {
        throw std::invalid_argument("binomial arguments must be non-negative");
    }
    if (r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    unsigned __int128 result = 1;
    for (int i = 1; i <= r; ++i) {
        // Multiply before dividing; the running value is always an exact
        // binomial coefficient, so the division has no remainder.
        result = result * static_cast<unsigned __int128>(n - r + i) / static_cast<unsigned>(i);
        if (result > std::numeric_limits<std::uint64_t>::max()) {
            throw numeric_error("binomial(" + std::to_string(n) + ", " + std::to_string(r) +
                                ") overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(result);
}

double factorial(int n) {
    if (n < 0) {
        throw std::invalid_argument("factorial argument must be non-negative");
    }
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

namespace {

// In-place successor in descending lexicographic order over all
// length-m vectors with fixed entry sum: pull one unit from the rightmost
// donor position and restack everything to its right as far left as
// possible. Returns false once all mass sits in the last slot.
bool next_composition_desc(std::vector<int>& a) {
    const int m = static_cast<int>(a.size());
    int donor = -1;
    for (int i = m - 2; i >= 0; --i) {
        if (a[i] > 0) {
            donor = i;
            break;
        }
    }
    if (donor < 0) {
        return false;
    }
    int rest = 0;
    for (int i = donor + 1; i < m; ++i) {
        rest += a[i];
        a[i] = 0;
    }
    a[donor] -= 1;
    a[donor + 1] = rest + 1;
    return true;
}

} // namespace

std::vector<OccupationState> enumerate_states(int modes, int photons,
                                              bool collision_free, std::uint64_t cap) {
    if (modes < 1) {
        throw std::invalid_argument("mode count must be positive");
    }
    if (photons < 0) {
        throw std::invalid_argument("photon number must be non-negative");
    }

    const std::uint64_t count = collision_free ? binomial(modes, photons)
                                               : binomial(modes + photons - 1, photons);
    if (count > cap) {
        throw numeric_error("state enumeration would produce " + std::to_string(count) +
                            " states, above the cap of " + std::to_string(cap));
    }

    std::vector<OccupationState> states;
    states.reserve(count);

    if (collision_free) {
        if (photons > modes) {
            return states; // zero states, matching C(m, n) = 0
        }
        std::vector<int> subset(photons);
        std::iota(subset.begin(), subset.end(), 0);
        do {
            OccupationState s;
            s.occupations.assign(modes, 0);
            for (int i : subset) {
                s.occupations[i] = 1;
            }
            states.push_back(std::move(s));
        } while (photons > 0 && next_index_subset(subset, modes));
        return states;
    }

    std::vector<int> occ(modes, 0);
    occ[0] = photons;
    do {
        states.push_back(OccupationState{occ});
    } while (next_composition_desc(occ));
    return states;
}

bool next_index_subset(std::span<int> subset, int m) {
    const int r = static_cast<int>(subset.size());
    int pivot = -1;
    for (int i = r - 1; i >= 0; --i) {
        if (subset[i] < m - (r - i)) {
            pivot = i;
            break;
        }
    }
    if (pivot < 0) {
        return false;
    }
    ++subset[pivot];
    for (int i = pivot + 1; i < r; ++i) {
        subset[i] = subset[i - 1] + 1;
    }
    return true;
}

std::vector<int> index_subset_by_rank(int m, int r, std::uint64_t rank) {
    if (r < 0 || r > m) {
        throw std::invalid_argument("subset size out of range");
    }
    if (rank >= binomial(m, r)) {
        throw std::invalid_argument("subset rank " + std::to_string(rank) + " out of range");
    }
    std::vector<int> subset;
    subset.reserve(r);
    int next = 0;
    for (int remaining = r; remaining > 0; --remaining) {
        // Greedily fix the smallest element consistent with the rank.
        for (int candidate = next;; ++candidate) {
            std::uint64_t below = binomial(m - candidate - 1, remaining - 1);
            if (rank < below) {
                subset.push_back(candidate);
                next = candidate + 1;
                break;
            }
            rank -= below;
        }
    }
    return subset;
}

} // namespace lossyboson
