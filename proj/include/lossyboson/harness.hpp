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

#ifndef LOSSYBOSON_HARNESS_HPP
#define LOSSYBOSON_HARNESS_HPP

#include <string>
#include <vector>

#include "lossyboson/rng.hpp"

namespace lossyboson {

/// Exit statuses shared by the library harness and the CLI.
inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_CONFIG = 2;  ///< bad flags, shapes or input files
inline constexpr int EXIT_NUMERIC = 3; ///< cap exceeded or precision exhausted

/**
 * @brief One experiment, fully described by plain data.
 *
 * The same struct drives every subcommand; fields irrelevant to a given
 * subcommand are ignored. validate() enforces the ranges that are common
 * to all of them; per-subcommand checks happen when the experiment runs.
 */
struct ExperimentConfig {
    std::string subcommand; ///< permanent | phi | sample | reduce | verify-lemma1

    int n = 0;
    int k = 0;
    int m = 0;          ///< interferometer modes (sample)
    long draws = 0;     ///< outcomes to emit (sample)
    long trials = 1;    ///< repetitions (verify-lemma1, sweep cells)
    double epsilon = 0.1;
    double delta = 0.1;
    double c = 1.0;     ///< scale factor (verify-lemma1)
    std::string model = "input";
    std::string noise = "none";
    std::vector<double> mixture_probs;
    Seed seed;
    int nodes = 0;      ///< total fit nodes for reduce; 0 means degree+1
    std::string matrix_file;

    void validate() const;
};

/// What one experiment produced: a process exit status, the report body
/// (JSON or line-oriented text), and a one-line error when status != 0.
struct RunOutcome {
    int status = EXIT_OK;
    std::string output;
    std::string error;
};

/// Executes one experiment. Never throws: failures come back as the
/// mapped exit status plus a single-line reason.
RunOutcome run_experiment(const ExperimentConfig& cfg);

/// One recovery trial inside a sweep.
struct SweepRow {
    int n = 0;
    int k = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    Seed seed;
    long trial = 0;
    double estimate = 0.0;
    double truth = 0.0;
    double abs_err = 0.0;
    double err_units_nfact = 0.0;
    bool success = false; ///< abs_err <= epsilon * n!
};

/**
 * @brief All rows of a sweep in deterministic order.
 *
 * Rows appear config by config, trial by trial, regardless of how many
 * worker threads ran them; two sweeps over the same configs and seeds
 * serialize to byte-identical reports.
 */
struct SweepReport {
    std::vector<SweepRow> rows;

    std::string to_csv() const;
    std::string to_json() const;
    /// Failure-rate lines, one per (n, k, epsilon, delta) cell.
    std::string summary() const;
};

/// Runs trials for every config (each must use subcommand "reduce"),
/// fanning the flattened trial list across `jobs` workers. Cells that fail
/// numerically are recorded as failed rows; the sweep keeps going.
SweepReport run_sweep(const std::vector<ExperimentConfig>& configs, int jobs);

/// Parses a JSON array of experiment configs for run_sweep.
std::vector<ExperimentConfig> load_sweep_configs(const std::string& path);

/// Writes content to path via a sibling temp file and an atomic rename, so
/// readers never observe a partial report.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace lossyboson

#endif // LOSSYBOSON_HARNESS_HPP
