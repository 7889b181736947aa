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

#include "lossyboson/reduction.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lossyboson/ensembles.hpp"
#include "lossyboson/errors.hpp"
#include "lossyboson/permanent.hpp"
#include "lossyboson/states.hpp"

namespace lossyboson {

namespace {

constexpr double CONDITION_CAP = 1e14;
constexpr double MIN_NODE_SPACING = 1e-12;
constexpr std::uint64_t ORACLE_NOISE_TAG = 0x6f7261636c655f31ULL;

// Solves a real n-by-n system in extended precision with partial pivoting.
std::vector<long double> solve_real_system(std::vector<long double> m,
                                           std::vector<long double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) {
                pivot = r;
            }
        }
        if (m[pivot * n + col] == 0.0L) {
            throw numeric_error("singular system in polynomial fit");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(m[pivot * n + c], m[col * n + c]);
            }
            std::swap(rhs[pivot], rhs[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const long double factor = m[r * n + col] / m[col * n + col];
            if (factor == 0.0L) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                m[r * n + c] -= factor * m[col * n + c];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<long double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        long double acc = rhs[r];
        for (std::size_t c = r + 1; c < n; ++c) {
            acc -= m[r * n + c] * x[c];
        }
        x[r] = acc / m[r * n + r];
    }
    return x;
}

std::uint64_t recovery_scale(int n, int k, LossKind kind) {
    const std::uint64_t subsets = binomial(n + k, k);
    switch (kind) {
        case LossKind::input_loss:
        case LossKind::dark_counts:
            return subsets;
        case LossKind::shuffle_exact:
        case LossKind::shuffle_mixture:
            return subsets * subsets;
    }
    throw std::invalid_argument("unknown loss model");
}

} // namespace

ComplexMatrix embed(const ComplexMatrix& x, int k, Seed seed) {
    if (!x.is_square()) {
        throw std::invalid_argument("embedding target must be square");
    }
    if (k < 0) {
        throw std::invalid_argument("padding width must be non-negative");
    }
    const int n = x.rows();
    ComplexMatrix a(n, n + k);
    CounterRng rng(seed);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = x(r, c);
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int c = n; c < n + k; ++c) {
            a(r, c) = rng.complex_gaussian();
        }
    }
    return a;
}

ComplexMatrix embed_tall(const ComplexMatrix& x, int k, Seed seed) {
    if (!x.is_square()) {
        throw std::invalid_argument("embedding target must be square");
    }
    if (k < 0) {
        throw std::invalid_argument("padding height must be non-negative");
    }
    const int n = x.rows();
    ComplexMatrix a(n + k, n);
    CounterRng rng(seed);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = x(r, c);
        }
    }
    for (int r = n; r < n + k; ++r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = rng.complex_gaussian();
        }
    }
    return a;
}

ComplexMatrix embed_square(const ComplexMatrix& x, int k, Seed seed) {
    if (!x.is_square()) {
        throw std::invalid_argument("embedding target must be square");
    }
    if (k < 0) {
        throw std::invalid_argument("padding width must be non-negative");
    }
    const int n = x.rows();
    ComplexMatrix a(n + k, n + k);
    CounterRng rng(seed);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = x(r, c);
        }
    }
    // Fixed fill order (right block, then bottom-left, then corner) keeps
    // the embedding a pure function of the seed.
    for (int r = 0; r < n; ++r) {
        for (int c = n; c < n + k; ++c) {
            a(r, c) = rng.complex_gaussian();
        }
    }
    for (int r = n; r < n + k; ++r) {
        for (int c = 0; c < n; ++c) {
            a(r, c) = rng.complex_gaussian();
        }
    }
    for (int r = n; r < n + k; ++r) {
        for (int c = n; c < n + k; ++c) {
            a(r, c) = rng.complex_gaussian();
        }
    }
    return a;
}

NodeSet interpolation_nodes(int n, int k, double delta, int degree, int extra_nodes) {
    if (n < 1 || k < 0) {
        throw std::invalid_argument("need n >= 1 and k >= 0");
    }
    if (degree < 0 || extra_nodes < 0) {
        throw std::invalid_argument("degree and extra node count must be non-negative");
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("confidence parameter must lie in (0, 1)");
    }

    const int count = degree + 1 + extra_nodes;
    NodeSet nodes;

    if (k == 0) {
        if (count > 1) {
            throw std::invalid_argument("no scaled columns, so only the unscaled node exists");
        }
        nodes.x_values = {1.0};
        nodes.c_values = {1.0};
        nodes.half_width = 0.0;
        return nodes;
    }

    const double a = delta / std::sqrt(static_cast<double>(n) * static_cast<double>(k));
    nodes.half_width = a;
    if (count == 1) {
        nodes.x_values = {1.0};
        nodes.c_values = {1.0};
        return nodes;
    }

    const double spacing = 2.0 * a / static_cast<double>(count - 1);
    if (spacing < MIN_NODE_SPACING) {
        throw numeric_error("node spacing " + std::to_string(spacing) +
                            ": delta too small for this degree");
    }
    nodes.x_values.resize(count);
    nodes.c_values.resize(count);
    for (int i = 0; i < count; ++i) {
        const double x = (1.0 - a) + spacing * static_cast<double>(i);
        nodes.x_values[i] = x;
        nodes.c_values[i] = std::sqrt(x);
    }
    return nodes;
}

ComplexMatrix build_vandermonde(const NodeSet& nodes, int degree) {
    if (nodes.x_values.empty()) {
        throw std::invalid_argument("empty node set");
    }
    if (degree < 0 || degree + 1 > static_cast<int>(nodes.x_values.size())) {
        throw std::invalid_argument("degree incompatible with node count");
    }
    const int rows = static_cast<int>(nodes.x_values.size());
    ComplexMatrix v(rows, degree + 1);
    for (int r = 0; r < rows; ++r) {
        double power = 1.0;
        for (int c = 0; c <= degree; ++c) {
            v(r, c) = complex_d(power, 0.0);
            power *= nodes.x_values[r];
        }
    }
    return v;
}

ComplexMatrix build_vandermonde(const NodeSet& nodes) {
    if (nodes.x_values.empty()) {
        throw std::invalid_argument("empty node set");
    }
    return build_vandermonde(nodes, static_cast<int>(nodes.x_values.size()) - 1);
}

double condition_number_inf(const ComplexMatrix& m) {
    if (!m.is_square()) {
        throw std::invalid_argument("condition number requires a square matrix");
    }
    const int n = m.rows();

    double norm = 0.0;
    for (int r = 0; r < n; ++r) {
        double row_sum = 0.0;
        for (int c = 0; c < n; ++c) {
            row_sum += std::abs(m(r, c));
        }
        norm = std::max(norm, row_sum);
    }

    // Gauss-Jordan inverse; a vanishing pivot means a singular matrix and
    // an infinite condition number.
    std::vector<complex_d> work(static_cast<std::size_t>(n) * n);
    std::vector<complex_d> inv(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            work[static_cast<std::size_t>(r) * n + c] = m(r, c);
        }
        inv[static_cast<std::size_t>(r) * n + r] = complex_d(1.0, 0.0);
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(work[static_cast<std::size_t>(r) * n + col]) >
                std::abs(work[static_cast<std::size_t>(pivot) * n + col])) {
                pivot = r;
            }
        }
        const complex_d p = work[static_cast<std::size_t>(pivot) * n + col];
        if (std::abs(p) == 0.0) {
            return std::numeric_limits<double>::infinity();
        }
        if (pivot != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(work[static_cast<std::size_t>(pivot) * n + c],
                          work[static_cast<std::size_t>(col) * n + c]);
                std::swap(inv[static_cast<std::size_t>(pivot) * n + c],
                          inv[static_cast<std::size_t>(col) * n + c]);
            }
        }
        const complex_d inv_p = complex_d(1.0, 0.0) / work[static_cast<std::size_t>(col) * n + col];
        for (int c = 0; c < n; ++c) {
            work[static_cast<std::size_t>(col) * n + c] *= inv_p;
            inv[static_cast<std::size_t>(col) * n + c] *= inv_p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const complex_d factor = work[static_cast<std::size_t>(r) * n + col];
            if (std::abs(factor) == 0.0) {
                continue;
            }
            for (int c = 0; c < n; ++c) {
                work[static_cast<std::size_t>(r) * n + c] -=
                    factor * work[static_cast<std::size_t>(col) * n + c];
                inv[static_cast<std::size_t>(r) * n + c] -=
                    factor * inv[static_cast<std::size_t>(col) * n + c];
            }
        }
    }

    double inv_norm = 0.0;
    for (int r = 0; r < n; ++r) {
        double row_sum = 0.0;
        for (int c = 0; c < n; ++c) {
            row_sum += std::abs(inv[static_cast<std::size_t>(r) * n + c]);
        }
        inv_norm = std::max(inv_norm, row_sum);
    }
    return norm * inv_norm;
}

double estimate_beta0(const ComplexMatrix& vandermonde, std::span<const double> values) {
    const int rows = vandermonde.rows();
    const int cols = vandermonde.cols();
    if (static_cast<int>(values.size()) != rows) {
        throw std::invalid_argument("value count " + std::to_string(values.size()) +
                                    " does not match node count " + std::to_string(rows));
    }
    if (rows < cols) {
        throw std::invalid_argument("underdetermined fit: fewer nodes than coefficients");
    }

    if (rows == cols) {
        const double cond = condition_number_inf(vandermonde);
        if (!(cond <= CONDITION_CAP)) {
            throw numeric_error("fit system condition number " + std::to_string(cond) +
                                " exceeds " + std::to_string(CONDITION_CAP));
        }
        std::vector<long double> m(static_cast<std::size_t>(rows) * cols);
        std::vector<long double> rhs(rows);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                m[static_cast<std::size_t>(r) * cols + c] = vandermonde(r, c).real();
            }
            rhs[r] = values[r];
        }
        return static_cast<double>(solve_real_system(std::move(m), std::move(rhs))[0]);
    }

    // Overdetermined: normal equations in extended precision.
    std::vector<long double> gram(static_cast<std::size_t>(cols) * cols, 0.0L);
    std::vector<long double> rhs(cols, 0.0L);
    for (int i = 0; i < cols; ++i) {
        for (int j = 0; j < cols; ++j) {
            long double acc = 0.0L;
            for (int r = 0; r < rows; ++r) {
                acc += static_cast<long double>(vandermonde(r, i).real()) *
                       static_cast<long double>(vandermonde(r, j).real());
            }
            gram[static_cast<std::size_t>(i) * cols + j] = acc;
        }
        long double acc = 0.0L;
        for (int r = 0; r < rows; ++r) {
            acc += static_cast<long double>(vandermonde(r, i).real()) *
                   static_cast<long double>(values[r]);
        }
        rhs[i] = acc;
    }

    ComplexMatrix gram_d(cols, cols);
    for (int i = 0; i < cols; ++i) {
        for (int j = 0; j < cols; ++j) {
            gram_d(i, j) =
                complex_d(static_cast<double>(gram[static_cast<std::size_t>(i) * cols + j]), 0.0);
        }
    }
    const double cond = condition_number_inf(gram_d);
    if (!(cond <= CONDITION_CAP)) {
        throw numeric_error("fit system condition number " + std::to_string(cond) + " exceeds " +
                            std::to_string(CONDITION_CAP));
    }
    return static_cast<double>(solve_real_system(std::move(gram), std::move(rhs))[0]);
}

double gautschi_bound(const NodeSet& nodes) {
    const std::vector<double>& x = nodes.x_values;
    if (x.empty()) {
        throw std::invalid_argument("empty node set");
    }
    if (x.size() == 1) {
        // Degenerate fit: the 1x1 system [1] has inverse norm exactly 1, and
        // the product over an empty index set would give 1; we return the
        // single factor 1 + |x| instead so the value stays a safe dominating
        // bound of the same shape as the multi-node case.
        return 1.0 + std::abs(x[0]);
    }
    long double best = 0.0L;
    for (std::size_t j = 0; j < x.size(); ++j) {
        long double prod = 1.0L;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i == j) {
                continue;
            }
            prod *= (1.0L + std::abs(static_cast<long double>(x[j]))) /
                    std::abs(static_cast<long double>(x[j]) - static_cast<long double>(x[i]));
        }
        best = std::max(best, prod);
    }
    return static_cast<double>(best);
}

double spaced_node_bound_ceiling(int degree, double half_width) {
    if (degree < 0) {
        throw std::invalid_argument("degree must be non-negative");
    }
    if (degree == 0) {
        return 1.0;
    }
    if (!(half_width > 0.0)) {
        throw std::invalid_argument("half-width must be positive");
    }
    const double k = static_cast<double>(degree);
    const double lead = std::pow(2.0 * std::numbers::e / half_width, k);
    if (degree % 2 == 0) {
        return lead / (std::numbers::pi * k);
    }
    // Odd degree: the Stirling correction below is +infinity at degree 1,
    // where sqrt(k^2 - 1) vanishes; IEEE division by zero reports that
    // honestly. 0^0 is taken as 1 so degree 1 needs no special case above.
    const double stirling =
        std::pow(k, k) / std::sqrt(std::pow(k - 1.0, k - 1.0) * std::pow(k + 1.0, k + 1.0));
    return lead / (std::numbers::pi * std::sqrt(k * k - 1.0)) * stirling;
}

VarianceBound variance_bound(double epsilon_prime, int n, int degree, double half_width) {
    if (epsilon_prime < 0.0) {
        throw std::invalid_argument("error budget must be non-negative");
    }
    if (n < 1 || degree < 0) {
        throw std::invalid_argument("need n >= 1 and degree >= 0");
    }
    if (degree > 0 && !(half_width > 0.0)) {
        throw std::invalid_argument("half-width must be positive for a positive degree");
    }

    const int count = degree + 1;
    const double b = spaced_node_bound_ceiling(degree, half_width);
    const double unit = epsilon_prime * factorial(n);

    VarianceBound out;
    out.inverse_norm_bound = b;
    if (unit == 0.0) {
        // A zero budget means zero variance regardless of geometry; guard
        // explicitly so the +infinity ceiling at degree 1 cannot turn the
        // product into NaN.
        return out;
    }
    out.explicit_bound =
        static_cast<double>(count) * static_cast<double>(count) * unit * unit * b * b;
    out.asymptotic = unit * unit / std::pow(half_width, 2.0 * degree);
    return out;
}

double epsilon_prime_budget(int n, int k, double epsilon, double delta) {
    if (n < 1 || k < 0) {
        throw std::invalid_argument("need n >= 1 and k >= 0");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("target accuracy must be positive");
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("confidence parameter must lie in (0, 1)");
    }
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    // 0^0 = 1 makes k = 0 collapse to epsilon * sqrt(delta).
    return epsilon * std::pow(delta, kd + 0.5) * std::pow(kd, kd / 2.0) /
           (std::pow(nd, kd / 2.0) * std::pow(nd + kd, kd));
}

double noisy_phi_oracle(const ComplexMatrix& a, const LossModel& model,
                        const NoiseSpec& noise, Seed seed) {
    model.validate();
    if (noise.epsilon_prime < 0.0) {
        throw std::invalid_argument("error budget must be non-negative");
    }

    double exact = 0.0;
    int n = 0;
    switch (model.kind) {
        case LossKind::input_loss:
            if (a.cols() - a.rows() != model.k) {
                throw std::invalid_argument("matrix shape disagrees with the model's k");
            }
            exact = phi_input_loss(a);
            n = a.rows();
            break;
        case LossKind::dark_counts:
            if (a.rows() - a.cols() != model.k) {
                throw std::invalid_argument("matrix shape disagrees with the model's k");
            }
            exact = phi_dark(a);
            n = a.cols();
            break;
        case LossKind::shuffle_exact:
            exact = phi_shuffle_exact(a, model.k);
            n = a.rows() - model.k;
            break;
        case LossKind::shuffle_mixture:
            exact = phi_shuffle_mixture(a, model);
            n = a.rows() - model.k;
            break;
    }
    if (n < 1) {
        throw std::invalid_argument("model leaves no photons");
    }

    const double budget = noise.epsilon_prime * factorial(n);
    switch (noise.kind) {
        case NoiseKind::none:
            return exact;
        case NoiseKind::uniform: {
            CounterRng rng(seed);
            return exact + rng.uniform_in(-budget, budget);
        }
        case NoiseKind::adversarial:
            return exact + ((seed.stream % 2 == 0) ? budget : -budget);
    }
    throw std::invalid_argument("unknown noise kind");
}

ReductionReport recover_permanent_squared(const ComplexMatrix& x, int k,
                                          const LossModel& model, const NoiseSpec& noise,
                                          double epsilon, double delta, Seed seed,
                                          int extra_nodes) {
    if (!x.is_square()) {
        throw std::invalid_argument("target matrix must be square");
    }
    if (k != model.k) {
        throw std::invalid_argument("k = " + std::to_string(k) +
                                    " disagrees with the model's k = " + std::to_string(model.k));
    }
    model.validate();
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("target accuracy must be positive");
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("confidence parameter must lie in (0, 1)");
    }

    const int n = x.rows();
    const bool shuffle_like =
        model.kind == LossKind::shuffle_exact || model.kind == LossKind::shuffle_mixture;
    const int degree = shuffle_like ? 2 * k : k;

    ReductionReport report;
    report.n = n;
    report.k = k;
    report.model_kind = model.kind;
    report.noise_kind = noise.kind;
    report.epsilon = epsilon;
    report.delta = delta;
    report.epsilon_prime = noise.epsilon_prime;
    report.seed = seed;

    report.nodes = interpolation_nodes(n, std::max(k, 0), delta, degree, extra_nodes);

    ComplexMatrix base(1, 1);
    switch (model.kind) {
        case LossKind::input_loss:
            base = embed(x, k, seed);
            break;
        case LossKind::dark_counts:
            base = embed_tall(x, k, seed);
            break;
        case LossKind::shuffle_exact:
        case LossKind::shuffle_mixture:
            base = embed_square(x, k, seed);
            break;
    }

    const Seed noise_root = derive_seed(seed, ORACLE_NOISE_TAG);
    const int node_count = static_cast<int>(report.nodes.c_values.size());
    report.oracle_values.resize(node_count);
    for (int i = 0; i < node_count; ++i) {
        const double c = report.nodes.c_values[i];
        ComplexMatrix probe(1, 1);
        switch (model.kind) {
            case LossKind::input_loss:
                probe = scale_right_columns(base, k, c);
                break;
            case LossKind::dark_counts:
                probe = scale_bottom_rows(base, k, c);
                break;
            case LossKind::shuffle_exact:
            case LossKind::shuffle_mixture:
                probe = scale_bottom_rows(scale_right_columns(base, k, c), k, c);
                break;
        }
        // Stream index = node index, so the adversarial oracle alternates
        // +budget, -budget, ... across nodes: its worst case for the fit.
        report.oracle_values[i] =
            noisy_phi_oracle(probe, model, noise, noise_root.with_stream(static_cast<std::uint64_t>(i)));
    }

    const ComplexMatrix vandermonde = build_vandermonde(report.nodes, degree);
    if (vandermonde.rows() == vandermonde.cols()) {
        report.vandermonde_condition = condition_number_inf(vandermonde);
    } else {
        // Condition of the normal-equation system the solver actually uses.
        ComplexMatrix gram(vandermonde.cols(), vandermonde.cols());
        for (int i = 0; i < vandermonde.cols(); ++i) {
            for (int j = 0; j < vandermonde.cols(); ++j) {
                long double acc = 0.0L;
                for (int r = 0; r < vandermonde.rows(); ++r) {
                    acc += static_cast<long double>(vandermonde(r, i).real()) *
                           static_cast<long double>(vandermonde(r, j).real());
                }
                gram(i, j) = complex_d(static_cast<double>(acc), 0.0);
            }
        }
        report.vandermonde_condition = condition_number_inf(gram);
    }

    const double beta0 = estimate_beta0(vandermonde, report.oracle_values);

    double estimate = beta0 * static_cast<double>(recovery_scale(n, k, model.kind));
    if (model.kind == LossKind::shuffle_mixture) {
        estimate /= model.mixture_probs.back();
    }
    report.estimate = estimate;

    report.truth_abs_squared = permanent(x).abs_squared;
    report.error_units_nfact = std::abs(estimate - report.truth_abs_squared) / factorial(n);
    report.succeeded = report.error_units_nfact <= epsilon;

    report.gautschi_norm_bound = gautschi_bound(report.nodes);
    report.variance_bound =
        variance_bound(noise.epsilon_prime, n, degree, report.nodes.half_width)
            .explicit_bound;
    return report;
}

} // namespace lossyboson
