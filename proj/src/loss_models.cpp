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

#include "lossyboson/loss_models.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lossyboson/errors.hpp"
#include "lossyboson/states.hpp"

namespace lossyboson {

namespace {

constexpr std::uint64_t SUBSET_CAP = 1'000'000;
constexpr std::uint64_t PARALLEL_CHUNKS = 64;

std::uint64_t checked_subset_count(int pool, int keep, const char* what) {
    const std::uint64_t count = binomial(pool, keep);
    if (count > SUBSET_CAP) {
        throw numeric_error(std::string(what) + " would visit " + std::to_string(count) +
                            " subsets, above the cap of " + std::to_string(SUBSET_CAP));
    }
    return count;
}

// Walks subset ranks [begin, end) of keep-of-pool selections and sums
// |Per|^2 of the associated gathers. over_columns picks whether the subset
// selects columns (wide matrix) or rows (tall matrix).
long double subset_persq_range(const ComplexMatrix& a, bool over_columns, int pool, int keep,
                               std::uint64_t begin, std::uint64_t end) {
    std::vector<int> subset = index_subset_by_rank(pool, keep, begin);
    long double sum = 0.0L;
    for (std::uint64_t rank = begin; rank < end; ++rank) {
        const ComplexMatrix sub =
            over_columns ? select_columns(a, subset) : select_rows(a, subset);
        sum += static_cast<long double>(permanent(sub).abs_squared);
        if (rank + 1 < end) {
            next_index_subset(subset, pool);
        }
    }
    return sum;
}

long double pairwise_total(std::vector<long double> parts) {
    std::size_t len = parts.size();
    while (len > 1) {
        const std::size_t half = (len + 1) / 2;
        for (std::size_t i = 0; i + half < len; ++i) {
            parts[i] += parts[i + half];
        }
        len = half;
    }
    return parts.empty() ? 0.0L : parts[0];
}

// Average |Per|^2 over all keep-sized subsets, optionally cut into a fixed
// number of rank chunks that run in parallel and merge in fixed order.
double average_subset_persq(const ComplexMatrix& a, bool over_columns, int pool, int keep,
                            std::uint64_t count, Exec exec) {
    if (exec == Exec::serial || count < 2 * PARALLEL_CHUNKS) {
        const long double total = subset_persq_range(a, over_columns, pool, keep, 0, count);
        return static_cast<double>(total / static_cast<long double>(count));
    }

    const std::uint64_t base = count / PARALLEL_CHUNKS;
    const std::uint64_t rem = count % PARALLEL_CHUNKS;
    std::vector<long double> parts(PARALLEL_CHUNKS);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t cidx = 0; cidx < static_cast<std::int64_t>(PARALLEL_CHUNKS); ++cidx) {
        const std::uint64_t u = static_cast<std::uint64_t>(cidx);
        const std::uint64_t begin = u * base + std::min<std::uint64_t>(u, rem);
        const std::uint64_t end = begin + base + (u < rem ? 1 : 0);
        parts[u] = subset_persq_range(a, over_columns, pool, keep, begin, end);
    }

    return static_cast<double>(pairwise_total(std::move(parts)) /
                               static_cast<long double>(count));
}

} // namespace

LossModel LossModel::input_loss(int k) {
    LossModel m;
    m.kind = LossKind::input_loss;
    m.k = k;
    m.validate();
    return m;
}

LossModel LossModel::dark_counts(int k) {
    LossModel m;
    m.kind = LossKind::dark_counts;
    m.k = k;
    m.validate();
    return m;
}

LossModel LossModel::shuffle(int k) {
    LossModel m;
    m.kind = LossKind::shuffle_exact;
    m.k = k;
    m.validate();
    return m;
}

LossModel LossModel::shuffle_mixture(std::vector<double> probs) {
    LossModel m;
    m.kind = LossKind::shuffle_mixture;
    m.k = static_cast<int>(probs.size()) - 1;
    m.mixture_probs = std::move(probs);
    m.validate();
    return m;
}

void LossModel::validate() const {
    if (k < 0) {
        throw std::invalid_argument("loss count k must be non-negative");
    }
    if (kind == LossKind::shuffle_mixture) {
        if (mixture_probs.size() != static_cast<std::size_t>(k) + 1) {
            throw std::invalid_argument("mixture needs k+1 weights, got " +
                                        std::to_string(mixture_probs.size()));
        }
        double sum = 0.0;
        for (double p : mixture_probs) {
            if (p < 0.0) {
                throw std::invalid_argument("mixture weights must be non-negative");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument("mixture weights must sum to 1, got " +
                                        std::to_string(sum));
        }
        if (!(mixture_probs.back() > 0.0)) {
            throw std::invalid_argument("top mixture weight must be positive");
        }
    } else if (!mixture_probs.empty()) {
        throw std::invalid_argument("mixture weights only apply to the mixture model");
    }
}

double phi_input_loss(const ComplexMatrix& a, Exec exec) {
    if (a.cols() < a.rows()) {
        throw std::invalid_argument("need at least as many columns as rows, got " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    const std::uint64_t count = checked_subset_count(a.cols(), a.rows(), "column-subset average");
    return average_subset_persq(a, /*over_columns=*/true, a.cols(), a.rows(), count, exec);
}

double phi_dark(const ComplexMatrix& a, Exec exec) {
    if (a.rows() < a.cols()) {
        throw std::invalid_argument("need at least as many rows as columns, got " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    const std::uint64_t count = checked_subset_count(a.rows(), a.cols(), "row-subset average");
    return average_subset_persq(a, /*over_columns=*/false, a.rows(), a.cols(), count, exec);
}

double phi_shuffle_exact(const ComplexMatrix& a, int dropped, Exec exec) {
    if (!a.is_square()) {
        throw std::invalid_argument("aligned-subset average requires a square matrix");
    }
    const int side = a.rows();
    if (dropped < 0 || dropped >= side) {
        throw std::invalid_argument("dropped count " + std::to_string(dropped) +
                                    " out of range for side " + std::to_string(side));
    }
    const int keep = side - dropped;
    const std::uint64_t per_axis = binomial(side, keep);
    // Screen per_axis alone first so squaring below cannot wrap.
    if (per_axis > SUBSET_CAP || per_axis * per_axis > SUBSET_CAP) {
        throw numeric_error("aligned-subset average would visit " + std::to_string(per_axis) +
                            "^2 subset pairs, above the cap of " + std::to_string(SUBSET_CAP));
    }

    // Materialize the row gathers once; each pairs with every column subset.
    // One row subset is one unit of parallel work, and the per-row partials
    // merge in fixed order, so serial and parallel runs agree.
    std::vector<ComplexMatrix> row_views;
    row_views.reserve(per_axis);
    std::vector<int> row_subset(keep);
    std::iota(row_subset.begin(), row_subset.end(), 0);
    do {
        row_views.push_back(select_rows(a, row_subset));
    } while (next_index_subset(row_subset, side));

    std::vector<long double> parts(per_axis, 0.0L);
    const bool go_parallel = (exec == Exec::parallel);
#pragma omp parallel for schedule(dynamic) if (go_parallel)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(per_axis); ++r) {
        parts[static_cast<std::size_t>(r)] = subset_persq_range(
            row_views[static_cast<std::size_t>(r)], /*over_columns=*/true, side, keep, 0, per_axis);
    }

    const long double denom =
        static_cast<long double>(per_axis) * static_cast<long double>(per_axis);
    return static_cast<double>(pairwise_total(std::move(parts)) / denom);
}

double phi_shuffle_mixture(const ComplexMatrix& a, const LossModel& model, Exec exec) {
    if (model.kind != LossKind::shuffle_mixture) {
        throw std::invalid_argument("model must be a shuffle mixture");
    }
    model.validate();
    if (!a.is_square()) {
        throw std::invalid_argument("mixture average requires a square matrix");
    }
    if (a.rows() <= model.k) {
        throw std::invalid_argument("matrix side must exceed the maximum loss count");
    }
    long double sum = 0.0L;
    for (int j = 0; j <= model.k; ++j) {
        if (model.mixture_probs[j] == 0.0) {
            continue;
        }
        sum += static_cast<long double>(model.mixture_probs[j]) *
               static_cast<long double>(phi_shuffle_exact(a, j, exec));
    }
    return static_cast<double>(sum);
}

double row_norm_product(const ComplexMatrix& a) {
    long double prod = 1.0L;
    for (int r = 0; r < a.rows(); ++r) {
        long double row_sq = 0.0L;
        for (int c = 0; c < a.cols(); ++c) {
            row_sq += static_cast<long double>(std::norm(a(r, c)));
        }
        prod *= row_sq;
    }
    return static_cast<double>(prod);
}

} // namespace lossyboson
