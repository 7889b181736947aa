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

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lossyboson/errors.hpp"
#include "lossyboson/harness.hpp"

namespace {

using lossyboson::ExperimentConfig;

/// The LOSSYBOSON_SEED environment variable, when set, overrides whatever
/// --seed was given; useful for rerunning a whole script under a new seed.
void apply_seed_env(ExperimentConfig& cfg) {
    const char* env = std::getenv("LOSSYBOSON_SEED");
    if (env == nullptr || *env == '\0') {
        return;
    }
    try {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(env, &used, 10);
        if (env[used] != '\0') {
            throw std::invalid_argument("trailing characters");
        }
        cfg.seed.value = value;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("LOSSYBOSON_SEED is not a valid integer: \"") +
                                    env + "\"");
    }
}

int emit(const lossyboson::RunOutcome& outcome, const std::string& out_path) {
    if (outcome.status != lossyboson::EXIT_OK) {
        std::cerr << "error: " << outcome.error << '\n';
        return outcome.status;
    }
    if (out_path.empty()) {
        std::cout << outcome.output;
        if (!outcome.output.empty() && outcome.output.back() != '\n') {
            std::cout << '\n';
        }
    } else {
        lossyboson::atomic_write_file(out_path, outcome.output);
    }
    return lossyboson::EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lossy photonic sampling models and permanent recovery"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string out_path;
    std::string sweep_config;
    std::string sweep_format = "csv";
    int jobs = 1;

    auto add_seed_flags = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed.value, "Root seed value (default 0)");
        sub->add_option("--stream", cfg.seed.stream, "Seed stream index (default 0)");
        sub->add_option("--out", out_path, "Write the report to this file (atomic)");
    };

    CLI::App* cmd_permanent =
        app.add_subcommand("permanent", "Permanent of a matrix, exact");
    cmd_permanent->add_option("--matrix-file", cfg.matrix_file, "Matrix JSON file");
    cmd_permanent->add_option("--n", cfg.n, "Draw a random n-by-n Gaussian target instead");
    add_seed_flags(cmd_permanent);

    CLI::App* cmd_phi = app.add_subcommand(
        "phi", "Averaged squared permanent over submatrices of a Gaussian draw");
    cmd_phi->add_option("--model", cfg.model, "input | dark | shuffle | shuffle-mix")
        ->required();
    cmd_phi->add_option("--n", cfg.n, "Photon number")->required();
    cmd_phi->add_option("--k", cfg.k, "Loss count")->required();
    cmd_phi->add_option("--probs", cfg.mixture_probs, "Mixture weights p0,...,pk")
        ->delimiter(',');
    add_seed_flags(cmd_phi);

    CLI::App* cmd_sample =
        app.add_subcommand("sample", "Draw outcomes from the lossy interferometer model");
    cmd_sample->add_option("--m", cfg.m, "Interferometer modes")->required();
    cmd_sample->add_option("--n", cfg.n, "Surviving photon number")->required();
    cmd_sample->add_option("--k", cfg.k, "Lost photons")->required();
    cmd_sample->add_option("--draws", cfg.draws, "Outcomes to emit")->required();
    add_seed_flags(cmd_sample);

    CLI::App* cmd_reduce = app.add_subcommand(
        "reduce", "Recover |Per|^2 of a Gaussian target from the noisy averaged oracle");
    cmd_reduce->add_option("--n", cfg.n, "Target matrix side")->required();
    cmd_reduce->add_option("--k", cfg.k, "Loss count")->required();
    cmd_reduce->add_option("--model", cfg.model, "input | dark | shuffle | shuffle-mix")
        ->required();
    cmd_reduce->add_option("--noise", cfg.noise, "none | uniform | adversarial")->required();
    cmd_reduce->add_option("--epsilon", cfg.epsilon, "Accuracy target in units of n!")
        ->required();
    cmd_reduce->add_option("--delta", cfg.delta, "Failure probability target")->required();
    cmd_reduce->add_option("--nodes", cfg.nodes, "Total fit nodes (default degree+1)");
    cmd_reduce->add_option("--probs", cfg.mixture_probs, "Mixture weights p0,...,pk")
        ->delimiter(',');
    add_seed_flags(cmd_reduce);

    CLI::App* cmd_verify = app.add_subcommand(
        "verify-lemma1", "Check the scaled-ensemble distance against its closed-form bound");
    cmd_verify->add_option("--n", cfg.n, "Rows of the scaled block")->required();
    cmd_verify->add_option("--k", cfg.k, "Columns of the scaled block")->required();
    cmd_verify->add_option("--c", cfg.c, "Scale factor")->required();
    cmd_verify->add_option("--trials", cfg.trials, "Monte Carlo trials (>= 10000)")
        ->required();
    add_seed_flags(cmd_verify);

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "Run a grid of recovery experiments from a config file");
    cmd_sweep->add_option("--config", sweep_config, "JSON array of reduce experiments")
        ->required();
    cmd_sweep->add_option("--jobs", jobs, "Worker threads (default 1)");
    cmd_sweep->add_option("--out", out_path, "Report file (atomic write)");
    cmd_sweep->add_option("--format", sweep_format, "csv | json (default csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return lossyboson::EXIT_CONFIG;
    }

    try {
        apply_seed_env(cfg);

        if (cmd_sweep->parsed()) {
            if (sweep_format != "csv" && sweep_format != "json") {
                throw std::invalid_argument("format must be csv or json, got \"" + sweep_format +
                                            "\"");
            }
            const std::vector<ExperimentConfig> configs =
                lossyboson::load_sweep_configs(sweep_config);
            const lossyboson::SweepReport report = lossyboson::run_sweep(configs, jobs);
            const std::string body =
                sweep_format == "csv" ? report.to_csv() : report.to_json();
            if (out_path.empty()) {
                std::cout << body;
                if (!body.empty() && body.back() != '\n') {
                    std::cout << '\n';
                }
            } else {
                lossyboson::atomic_write_file(out_path, body);
            }
            std::cout << report.summary();
            return lossyboson::EXIT_OK;
        }

        if (cmd_permanent->parsed()) {
            cfg.subcommand = "permanent";
        } else if (cmd_phi->parsed()) {
            cfg.subcommand = "phi";
        } else if (cmd_sample->parsed()) {
            cfg.subcommand = "sample";
        } else if (cmd_reduce->parsed()) {
            cfg.subcommand = "reduce";
        } else {
            cfg.subcommand = "verify-lemma1";
        }

        return emit(lossyboson::run_experiment(cfg), out_path);
    } catch (const lossyboson::numeric_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lossyboson::EXIT_NUMERIC;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lossyboson::EXIT_CONFIG;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lossyboson::EXIT_NUMERIC;
    }
}
