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

#ifndef LOSSYBOSON_JSON_IO_HPP
#define LOSSYBOSON_JSON_IO_HPP

#include <string>

#include "lossyboson/distributions.hpp"
#include "lossyboson/matrix.hpp"
#include "lossyboson/reduction.hpp"

namespace lossyboson {

/**
 * Matrix wire format:
 *   {"rows": r, "cols": c, "re": [...], "im": [...]}
 * with both component arrays flattened row-major and of length r*c.
 */
std::string matrix_to_json(const ComplexMatrix& m);

/// Parses the matrix wire format; malformed documents, shape/length
/// mismatches and non-finite entries raise std::invalid_argument.
ComplexMatrix matrix_from_json(const std::string& text);

/// Reads a matrix JSON file from disk.
ComplexMatrix load_matrix_file(const std::string& path);

/**
 * Distribution wire format:
 *   {"outcomes": [[...], ...], "probs": [...]}
 * outcomes are occupation vectors in the library's enumeration order.
 */
std::string distribution_to_json(const OutcomeDistribution& dist);

OutcomeDistribution distribution_from_json(const std::string& text);

/// Full recovery report as a JSON object, keys sorted, floats
/// shortest-round-trip, ready for downstream tooling.
std::string report_to_json(const ReductionReport& report);

/// Wire names ("input", "dark", "shuffle", "shuffle-mix") for the loss kinds.
const char* loss_kind_name(LossKind kind);
LossKind parse_loss_kind(const std::string& name);

/// Wire names ("none", "uniform", "adversarial") for the noise kinds.
const char* noise_kind_name(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string& name);

} // namespace lossyboson

#endif // LOSSYBOSON_JSON_IO_HPP
