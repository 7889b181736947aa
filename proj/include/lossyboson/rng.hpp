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

#ifndef LOSSYBOSON_RNG_HPP
#define LOSSYBOSON_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace lossyboson {

/**
 * @brief Identifies one reproducible random stream.
 *
 * Every randomized routine in the library takes a Seed; identical seeds give
 * bit-identical results on every platform and thread count. Distinct stream
 * values under the same root value give statistically independent streams,
 * which is how one experiment fans out into many independent draws.
 */
struct Seed {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;

    /// Same root value, different stream index.
    constexpr Seed with_stream(std::uint64_t s) const { return Seed{value, s}; }

    /// Shifts the stream index; handy for per-trial or per-node fan-out.
    constexpr Seed offset(std::uint64_t delta) const { return Seed{value, stream + delta}; }

    friend bool operator==(const Seed&, const Seed&) = default;
};

/**
 * @brief Derives an unrelated child seed for a named sub-task.
 *
 * Mixes (parent, tag, index) through an integer finalizer so children with
 * different tags or indices behave as independent streams and never collide
 * with draws made directly from the parent. Pure function: same inputs,
 * same child.
 */
Seed derive_seed(Seed parent, std::uint64_t tag, std::uint64_t index = 0);

/**
 * @brief Counter-based generator (Philox-4x64, 10 rounds) keyed by a Seed.
 *
 * The key is (seed.value, seed.stream) and a 256-bit block counter walks the
 * output sequence, so the i-th draw is a pure function of the seed alone.
 * No global state, trivially cheap to construct, safe to instantiate once
 * per task in parallel code.
 */
class CounterRng {
public:
    explicit CounterRng(Seed seed);

    /// Next raw 64-bit word of the keyed stream.
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01();

    /// Uniform double in [lo, hi).
    double uniform_in(double lo, double hi);

    /// Standard real normal N(0, 1) via Box-Muller.
    double normal();

    /// Standard complex normal: total variance 1, split evenly between
    /// the real and imaginary parts.
    std::complex<double> complex_gaussian();

private:
    void refill();

    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> block_;
    int block_pos_;
};

} // namespace lossyboson

#endif // LOSSYBOSON_RNG_HPP
