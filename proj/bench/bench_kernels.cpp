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

// Times the serial reference kernels against their segment-parallel
// counterparts and cross-checks that both modes agree. Wall-clock numbers
// are whatever the current machine gives; the agreement columns are the
// part that must hold everywhere.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lossyboson/ensembles.hpp"
#include "lossyboson/loss_models.hpp"
#include "lossyboson/permanent.hpp"
#include "lossyboson/rng.hpp"

using namespace lossyboson;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_permanent(int n, int repeats) {
    const ComplexMatrix m = sample_gaussian_matrix(n, n, Seed{2026, static_cast<std::uint64_t>(n)});

    auto t0 = std::chrono::steady_clock::now();
    PermanentValue serial{};
    for (int r = 0; r < repeats; ++r) {
        serial = permanent(m, Exec::serial);
    }
    const double serial_s = seconds_since(t0) / repeats;

    t0 = std::chrono::steady_clock::now();
    PermanentValue par{};
    for (int r = 0; r < repeats; ++r) {
        par = permanent(m, Exec::parallel);
    }
    const double parallel_s = seconds_since(t0) / repeats;

    const double rel = std::abs(par.abs_squared - serial.abs_squared) /
                       std::max(serial.abs_squared, 1e-300);
    std::printf("permanent  n=%2d  serial %10.6f s  parallel %10.6f s  speedup %5.2fx  rel-dev %.2e\n",
                n, serial_s, parallel_s, serial_s / parallel_s, rel);
}

void bench_phi(int n, int k, int repeats) {
    const ComplexMatrix a =
        sample_gaussian_matrix(n, n + k, Seed{2026, 100 + static_cast<std::uint64_t>(n)});

    auto t0 = std::chrono::steady_clock::now();
    double serial = 0.0;
    for (int r = 0; r < repeats; ++r) {
        serial = phi_input_loss(a, Exec::serial);
    }
    const double serial_s = seconds_since(t0) / repeats;

    t0 = std::chrono::steady_clock::now();
    double par = 0.0;
    for (int r = 0; r < repeats; ++r) {
        par = phi_input_loss(a, Exec::parallel);
    }
    const double parallel_s = seconds_since(t0) / repeats;

    const double rel = std::abs(par - serial) / std::max(serial, 1e-300);
    std::printf("phi        n=%2d k=%d  serial %10.6f s  parallel %10.6f s  speedup %5.2fx  rel-dev %.2e\n",
                n, k, serial_s, parallel_s, serial_s / parallel_s, rel);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel mode falls back to one thread\n");
#endif

    bench_permanent(12, 20);
    bench_permanent(16, 5);
    bench_permanent(18, 2);
    bench_permanent(20, 1);

    bench_phi(10, 6, 3);
    bench_phi(12, 5, 2);
    bench_phi(13, 6, 1);

    return 0;
}
