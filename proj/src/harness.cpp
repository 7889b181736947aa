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

#include "lossyboson/harness.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lossyboson/distributions.hpp"
#include "lossyboson/ensembles.hpp"
#include "lossyboson/errors.hpp"
#include "lossyboson/json_io.hpp"
#include "lossyboson/loss_models.hpp"
#include "lossyboson/permanent.hpp"
#include "lossyboson/reduction.hpp"
#include "lossyboson/states.hpp"

namespace lossyboson {

namespace {

using nlohmann::json;

// Domain tags separating the random streams one experiment fans into.
constexpr std::uint64_t TAG_TARGET_MATRIX = 0x746172676574586dULL;
constexpr std::uint64_t TAG_INTERFEROMETER = 0x68616172756e6974ULL;
constexpr std::uint64_t TAG_OUTCOME_DRAW = 0x6472617773657164ULL;

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

LossModel model_from_config(const ExperimentConfig& cfg) {
    const LossKind kind = parse_loss_kind(cfg.model);
    switch (kind) {
        case LossKind::input_loss:
            return LossModel::input_loss(cfg.k);
        case LossKind::dark_counts:
            return LossModel::dark_counts(cfg.k);
        case LossKind::shuffle_exact:
            return LossModel::shuffle(cfg.k);
        case LossKind::shuffle_mixture: {
            std::vector<double> probs = cfg.mixture_probs;
            if (static_cast<int>(probs.size()) != cfg.k + 1) {
                throw std::invalid_argument("shuffle-mix needs k+1 mixture weights, got " +
                                            std::to_string(probs.size()));
            }
            return LossModel::shuffle_mixture(std::move(probs));
        }
    }
    throw std::invalid_argument("unknown loss model");
}

NoiseSpec noise_from_config(const ExperimentConfig& cfg) {
    NoiseSpec noise;
    noise.kind = parse_noise_kind(cfg.noise);
    if (noise.kind != NoiseKind::none) {
        noise.epsilon_prime = epsilon_prime_budget(cfg.n, cfg.k, cfg.epsilon, cfg.delta);
    }
    return noise;
}

int extra_nodes_from_config(const ExperimentConfig& cfg, LossKind kind) {
    if (cfg.nodes == 0) {
        return 0;
    }
    const bool shuffle_like =
        kind == LossKind::shuffle_exact || kind == LossKind::shuffle_mixture;
    const int minimum = (shuffle_like ? 2 * cfg.k : cfg.k) + 1;
    if (cfg.nodes < minimum) {
        throw std::invalid_argument("this model needs at least " + std::to_string(minimum) +
                                    " nodes, got " + std::to_string(cfg.nodes));
    }
    return cfg.nodes - minimum;
}

std::string run_permanent(const ExperimentConfig& cfg) {
    ComplexMatrix x = cfg.matrix_file.empty()
                          ? sample_gaussian_matrix(cfg.n, cfg.n,
                                                   derive_seed(cfg.seed, TAG_TARGET_MATRIX))
                          : load_matrix_file(cfg.matrix_file);
    const PermanentValue p = permanent(x);
    json doc;
    doc["rows"] = x.rows();
    doc["re"] = p.value.real();
    doc["im"] = p.value.imag();
    doc["abs_squared"] = p.abs_squared;
    return doc.dump();
}

std::string run_phi(const ExperimentConfig& cfg) {
    const LossModel model = model_from_config(cfg);
    ComplexMatrix a(1, 1);
    const Seed matrix_seed = derive_seed(cfg.seed, TAG_TARGET_MATRIX);
    switch (model.kind) {
        case LossKind::input_loss:
            a = sample_gaussian_matrix(cfg.n, cfg.n + cfg.k, matrix_seed);
            break;
        case LossKind::dark_counts:
            a = sample_gaussian_matrix(cfg.n + cfg.k, cfg.n, matrix_seed);
            break;
        case LossKind::shuffle_exact:
        case LossKind::shuffle_mixture:
            a = sample_gaussian_matrix(cfg.n + cfg.k, cfg.n + cfg.k, matrix_seed);
            break;
    }

    double value = 0.0;
    switch (model.kind) {
        case LossKind::input_loss:
            value = phi_input_loss(a);
            break;
        case LossKind::dark_counts:
            value = phi_dark(a);
            break;
        case LossKind::shuffle_exact:
            value = phi_shuffle_exact(a, model.k);
            break;
        case LossKind::shuffle_mixture:
            value = phi_shuffle_mixture(a, model);
            break;
    }

    json doc;
    doc["model"] = loss_kind_name(model.kind);
    doc["n"] = cfg.n;
    doc["k"] = cfg.k;
    doc["phi"] = value;
    return doc.dump();
}

std::string run_sample(const ExperimentConfig& cfg) {
    const ComplexMatrix u =
        sample_haar_unitary(cfg.m, derive_seed(cfg.seed, TAG_INTERFEROMETER));
    const OutcomeDistribution dist = lossy_distribution(u, cfg.n, cfg.k);

    std::ostringstream out;
    for (long d = 0; d < cfg.draws; ++d) {
        const OccupationState s =
            sample_outcome(dist, derive_seed(cfg.seed, TAG_OUTCOME_DRAW,
                                             static_cast<std::uint64_t>(d)));
        for (int i = 0; i < s.modes(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << s.occupations[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string run_reduce(const ExperimentConfig& cfg) {
    const LossModel model = model_from_config(cfg);
    const NoiseSpec noise = noise_from_config(cfg);
    const int extra = extra_nodes_from_config(cfg, model.kind);
    const ComplexMatrix x =
        sample_gaussian_matrix(cfg.n, cfg.n, derive_seed(cfg.seed, TAG_TARGET_MATRIX));
    const ReductionReport report = recover_permanent_squared(
        x, cfg.k, model, noise, cfg.epsilon, cfg.delta, cfg.seed, extra);
    return report_to_json(report);
}

std::string run_verify_lemma1(const ExperimentConfig& cfg) {
    const double kl = kl_scaled_gaussian(cfg.n, cfg.k, cfg.c);
    const double bound = pinsker_tv_bound(kl);
    const TvEstimate tv =
        tv_monte_carlo(GaussianEnsembleSpec{cfg.n, cfg.k, cfg.c}, cfg.trials, cfg.seed);

    json doc;
    doc["n"] = cfg.n;
    doc["k"] = cfg.k;
    doc["c"] = cfg.c;
    doc["trials"] = cfg.trials;
    doc["kl"] = kl;
    doc["pinsker_bound"] = bound;
    doc["tv_estimate"] = tv.estimate;
    doc["tv_std_error"] = tv.std_error;
    // Monte Carlo noise allowance: three standard errors.
    doc["bound_satisfied"] = tv.estimate <= bound + 3.0 * tv.std_error;
    return doc.dump();
}

} // namespace

void ExperimentConfig::validate() const {
    if (subcommand != "permanent" && subcommand != "phi" && subcommand != "sample" &&
        subcommand != "reduce" && subcommand != "verify-lemma1") {
        throw std::invalid_argument("unknown subcommand \"" + subcommand + "\"");
    }

    if (subcommand == "permanent") {
        if (matrix_file.empty() && n < 1) {
            throw std::invalid_argument("need --matrix-file or a positive --n");
        }
        return;
    }

    if (n < 1) {
        throw std::invalid_argument("photon number n must be positive");
    }

    if (subcommand == "phi" || subcommand == "reduce") {
        if (k < 0) {
            throw std::invalid_argument("loss count k must be non-negative");
        }
        parse_loss_kind(model);
        if (model != "shuffle-mix" && !mixture_probs.empty()) {
            throw std::invalid_argument("mixture weights only apply to shuffle-mix");
        }
    }

    if (subcommand == "reduce") {
        parse_noise_kind(noise);
        if (!(epsilon > 0.0)) {
            throw std::invalid_argument("epsilon must be positive");
        }
        if (!(delta > 0.0) || !(delta < 1.0)) {
            throw std::invalid_argument("delta must lie in (0, 1)");
        }
        if (nodes < 0) {
            throw std::invalid_argument("node count must be non-negative");
        }
        if (trials < 1) {
            throw std::invalid_argument("trial count must be positive");
        }
    }

    if (subcommand == "sample") {
        if (k < 0) {
            throw std::invalid_argument("loss count k must be non-negative");
        }
        if (m < n + k) {
            throw std::invalid_argument("need at least n+k modes, got m = " + std::to_string(m));
        }
        if (draws < 1) {
            throw std::invalid_argument("draw count must be positive");
        }
    }

    if (subcommand == "verify-lemma1") {
        if (k < 1) {
            throw std::invalid_argument("need k >= 1 scaled entries");
        }
        if (!(c > 0.0)) {
            throw std::invalid_argument("scale factor must be positive");
        }
        if (trials < 10'000) {
            throw std::invalid_argument("need at least 10000 trials");
        }
    }
}

RunOutcome run_experiment(const ExperimentConfig& cfg) {
    RunOutcome out;
    try {
        cfg.validate();
        if (cfg.subcommand == "permanent") {
            out.output = run_permanent(cfg);
        } else if (cfg.subcommand == "phi") {
            out.output = run_phi(cfg);
        } else if (cfg.subcommand == "sample") {
            out.output = run_sample(cfg);
        } else if (cfg.subcommand == "reduce") {
            out.output = run_reduce(cfg);
        } else {
            out.output = run_verify_lemma1(cfg);
        }
    } catch (const std::invalid_argument& e) {
        out.status = EXIT_CONFIG;
        out.error = e.what();
    } catch (const numeric_error& e) {
        out.status = EXIT_NUMERIC;
        out.error = e.what();
    } catch (const std::exception& e) {
        out.status = EXIT_NUMERIC;
        out.error = e.what();
    }
    return out;
}

std::string SweepReport::to_csv() const {
    std::ostringstream out;
    out << "n,k,epsilon,delta,seed,trial,estimate,truth,abs_err,err_units_nfact,success\n";
    for (const SweepRow& r : rows) {
        out << r.n << ',' << r.k << ',' << format_g17(r.epsilon) << ',' << format_g17(r.delta)
            << ',' << r.seed.value << ':' << r.seed.stream << ',' << r.trial << ','
            << format_g17(r.estimate) << ',' << format_g17(r.truth) << ','
            << format_g17(r.abs_err) << ',' << format_g17(r.err_units_nfact) << ','
            << (r.success ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string SweepReport::to_json() const {
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json row;
        row["n"] = r.n;
        row["k"] = r.k;
        row["epsilon"] = r.epsilon;
        row["delta"] = r.delta;
        row["seed"] = {{"value", r.seed.value}, {"stream", r.seed.stream}};
        row["trial"] = r.trial;
        row["estimate"] = r.estimate;
        row["truth"] = r.truth;
        row["abs_err"] = r.abs_err;
        row["err_units_nfact"] = r.err_units_nfact;
        row["success"] = r.success;
        arr.push_back(std::move(row));
    }
    return arr.dump();
}

std::string SweepReport::summary() const {
    struct Cell {
        int n;
        int k;
        double epsilon;
        double delta;
        long total = 0;
        long good = 0;
    };
    std::vector<Cell> cells;
    for (const SweepRow& r : rows) {
        Cell* cell = nullptr;
        for (Cell& c : cells) {
            if (c.n == r.n && c.k == r.k && c.epsilon == r.epsilon && c.delta == r.delta) {
                cell = &c;
                break;
            }
        }
        if (cell == nullptr) {
            cells.push_back(Cell{r.n, r.k, r.epsilon, r.delta, 0, 0});
            cell = &cells.back();
        }
        ++cell->total;
        if (r.success) {
            ++cell->good;
        }
    }
    std::ostringstream out;
    for (const Cell& c : cells) {
        const double failure =
            c.total > 0 ? static_cast<double>(c.total - c.good) / static_cast<double>(c.total)
                        : 0.0;
        out << "n=" << c.n << " k=" << c.k << " epsilon=" << format_g17(c.epsilon)
            << " delta=" << format_g17(c.delta) << ": " << c.good << '/' << c.total
            << " within budget (failure rate " << format_g17(failure) << ")\n";
    }
    return out.str();
}

SweepReport run_sweep(const std::vector<ExperimentConfig>& configs, int jobs) {
    if (jobs < 1) {
        throw std::invalid_argument("job count must be positive");
    }
    for (const ExperimentConfig& cfg : configs) {
        if (cfg.subcommand != "reduce") {
            throw std::invalid_argument("sweeps only run reduce experiments");
        }
        cfg.validate();
    }

    // Flatten (config, trial) into one work list; rows land at fixed
    // indices, so worker scheduling cannot change the report.
    struct Item {
        std::size_t config;
        long trial;
    };
    std::vector<Item> items;
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        for (long t = 0; t < configs[ci].trials; ++t) {
            items.push_back(Item{ci, t});
        }
    }

    SweepReport report;
    report.rows.resize(items.size());

#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(items.size()); ++idx) {
        const Item& item = items[static_cast<std::size_t>(idx)];
        const ExperimentConfig& cfg = configs[item.config];
        // Trial t of a cell runs at stream offset t from the cell's seed.
        const Seed trial_seed = cfg.seed.offset(static_cast<std::uint64_t>(item.trial));

        SweepRow row;
        row.n = cfg.n;
        row.k = cfg.k;
        row.epsilon = cfg.epsilon;
        row.delta = cfg.delta;
        row.seed = trial_seed;
        row.trial = item.trial;
        try {
            const LossModel model = model_from_config(cfg);
            const NoiseSpec noise = noise_from_config(cfg);
            const int extra = extra_nodes_from_config(cfg, model.kind);
            const ComplexMatrix x = sample_gaussian_matrix(
                cfg.n, cfg.n, derive_seed(trial_seed, TAG_TARGET_MATRIX));
            const ReductionReport r = recover_permanent_squared(
                x, cfg.k, model, noise, cfg.epsilon, cfg.delta, trial_seed, extra);
            row.estimate = r.estimate;
            row.truth = r.truth_abs_squared;
            row.abs_err = std::abs(r.estimate - r.truth_abs_squared);
            row.err_units_nfact = r.error_units_nfact;
            row.success = row.abs_err <= cfg.epsilon * factorial(cfg.n);
        } catch (const std::exception&) {
            row.estimate = std::numeric_limits<double>::quiet_NaN();
            row.truth = std::numeric_limits<double>::quiet_NaN();
            row.abs_err = std::numeric_limits<double>::quiet_NaN();
            row.err_units_nfact = std::numeric_limits<double>::quiet_NaN();
            row.success = false;
        }
        report.rows[static_cast<std::size_t>(idx)] = std::move(row);
    }
    return report;
}

std::vector<ExperimentConfig> load_sweep_configs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open sweep config: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    json doc = json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw std::invalid_argument("sweep config must be a JSON array of experiments");
    }

    std::vector<ExperimentConfig> configs;
    for (const json& entry : doc) {
        if (!entry.is_object()) {
            throw std::invalid_argument("each sweep entry must be an object");
        }
        ExperimentConfig cfg;
        cfg.subcommand = "reduce";
        for (const auto& [key, value] : entry.items()) {
            if (key == "n") {
                cfg.n = value.get<int>();
            } else if (key == "k") {
                cfg.k = value.get<int>();
            } else if (key == "epsilon") {
                cfg.epsilon = value.get<double>();
            } else if (key == "delta") {
                cfg.delta = value.get<double>();
            } else if (key == "trials") {
                cfg.trials = value.get<long>();
            } else if (key == "model") {
                cfg.model = value.get<std::string>();
            } else if (key == "noise") {
                cfg.noise = value.get<std::string>();
            } else if (key == "probs") {
                cfg.mixture_probs = value.get<std::vector<double>>();
            } else if (key == "nodes") {
                cfg.nodes = value.get<int>();
            } else if (key == "seed") {
                if (value.is_object()) {
                    cfg.seed.value = value.at("value").get<std::uint64_t>();
                    cfg.seed.stream = value.value("stream", std::uint64_t{0});
                } else {
                    cfg.seed.value = value.get<std::uint64_t>();
                }
            } else {
                throw std::invalid_argument("unknown sweep config key \"" + key + "\"");
            }
        }
        cfg.validate();
        configs.push_back(std::move(cfg));
    }
    return configs;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::invalid_argument("cannot write to " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::invalid_argument("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

} // namespace lossyboson
