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

#include "lossyboson/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lossyboson {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        throw std::invalid_argument("malformed JSON document");
    }
    return doc;
}

std::vector<double> number_array(const json& doc, const char* key, std::size_t expected) {
    if (!doc.contains(key) || !doc[key].is_array()) {
        throw std::invalid_argument(std::string("missing array field \"") + key + "\"");
    }
    std::vector<double> out;
    out.reserve(doc[key].size());
    for (const json& v : doc[key]) {
        if (!v.is_number()) {
            throw std::invalid_argument(std::string("non-numeric entry in \"") + key + "\"");
        }
        out.push_back(v.get<double>());
    }
    if (out.size() != expected) {
        throw std::invalid_argument(std::string("field \"") + key + "\" holds " +
                                    std::to_string(out.size()) + " entries, expected " +
                                    std::to_string(expected));
    }
    return out;
}

} // namespace

std::string matrix_to_json(const ComplexMatrix& m) {
    json doc;
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    json re = json::array();
    json im = json::array();
    for (const complex_d& z : m.entries()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
    return doc.dump();
}

ComplexMatrix matrix_from_json(const std::string& text) {
    const json doc = parse_or_throw(text);
    if (!doc.is_object()) {
        throw std::invalid_argument("matrix document must be a JSON object");
    }
    if (!doc.contains("rows") || !doc["rows"].is_number_integer() || !doc.contains("cols") ||
        !doc["cols"].is_number_integer()) {
        throw std::invalid_argument("matrix document needs integer \"rows\" and \"cols\"");
    }
    const int rows = doc["rows"].get<int>();
    const int cols = doc["cols"].get<int>();
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
    const std::size_t total = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    const std::vector<double> re = number_array(doc, "re", total);
    const std::vector<double> im = number_array(doc, "im", total);

    std::vector<complex_d> entries(total);
    for (std::size_t i = 0; i < total; ++i) {
        if (!std::isfinite(re[i]) || !std::isfinite(im[i])) {
            throw std::invalid_argument("matrix entries must be finite");
        }
        entries[i] = complex_d(re[i], im[i]);
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

ComplexMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open matrix file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return matrix_from_json(buffer.str());
}

std::string distribution_to_json(const OutcomeDistribution& dist) {
    json doc;
    json outcomes = json::array();
    for (const OccupationState& s : dist.outcomes) {
        outcomes.push_back(s.occupations);
    }
    doc["outcomes"] = std::move(outcomes);
    doc["probs"] = dist.probs;
    return doc.dump();
}

OutcomeDistribution distribution_from_json(const std::string& text) {
    const json doc = parse_or_throw(text);
    if (!doc.is_object() || !doc.contains("outcomes") || !doc["outcomes"].is_array() ||
        !doc.contains("probs") || !doc["probs"].is_array()) {
        throw std::invalid_argument("distribution document needs \"outcomes\" and \"probs\"");
    }
    OutcomeDistribution dist;
    for (const json& o : doc["outcomes"]) {
        if (!o.is_array()) {
            throw std::invalid_argument("each outcome must be an occupation array");
        }
        OccupationState s;
        for (const json& v : o) {
            if (!v.is_number_integer() || v.get<int>() < 0) {
                throw std::invalid_argument("occupations must be non-negative integers");
            }
            s.occupations.push_back(v.get<int>());
        }
        dist.outcomes.push_back(std::move(s));
    }
    for (const json& p : doc["probs"]) {
        if (!p.is_number()) {
            throw std::invalid_argument("probabilities must be numeric");
        }
        dist.probs.push_back(p.get<double>());
    }
    if (dist.outcomes.size() != dist.probs.size()) {
        throw std::invalid_argument("outcome and probability counts differ");
    }
    return dist;
}

const char* loss_kind_name(LossKind kind) {
    switch (kind) {
        case LossKind::input_loss:
            return "input";
        case LossKind::dark_counts:
            return "dark";
        case LossKind::shuffle_exact:
            return "shuffle";
        case LossKind::shuffle_mixture:
            return "shuffle-mix";
    }
    return "unknown";
}

LossKind parse_loss_kind(const std::string& name) {
    if (name == "input") {
        return LossKind::input_loss;
    }
    if (name == "dark") {
        return LossKind::dark_counts;
    }
    if (name == "shuffle") {
        return LossKind::shuffle_exact;
    }
    if (name == "shuffle-mix") {
        return LossKind::shuffle_mixture;
    }
    throw std::invalid_argument("unknown loss model \"" + name +
                                "\" (expected input, dark, shuffle or shuffle-mix)");
}

const char* noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::none:
            return "none";
        case NoiseKind::uniform:
            return "uniform";
        case NoiseKind::adversarial:
            return "adversarial";
    }
    return "unknown";
}

NoiseKind parse_noise_kind(const std::string& name) {
    if (name == "none") {
        return NoiseKind::none;
    }
    if (name == "uniform") {
        return NoiseKind::uniform;
    }
    if (name == "adversarial") {
        return NoiseKind::adversarial;
    }
    throw std::invalid_argument("unknown noise kind \"" + name +
                                "\" (expected none, uniform or adversarial)");
}

namespace {

// JSON has no infinities; the diagnostic bounds can honestly be +inf (the
// odd-degree variance ceiling diverges at degree 1), so encode non-finite
// values as strings instead of letting the serializer write null.
json finite_or_string(double v) {
    if (std::isfinite(v)) {
        return json(v);
    }
    if (std::isnan(v)) {
        return json("nan");
    }
    return json(v > 0.0 ? "inf" : "-inf");
}

} // namespace

std::string report_to_json(const ReductionReport& report) {
    json doc;
    doc["n"] = report.n;
    doc["k"] = report.k;
    doc["model"] = loss_kind_name(report.model_kind);
    doc["noise"] = noise_kind_name(report.noise_kind);
    doc["epsilon"] = report.epsilon;
    doc["delta"] = report.delta;
    doc["epsilon_prime"] = report.epsilon_prime;
    doc["seed"] = {{"value", report.seed.value}, {"stream", report.seed.stream}};
    doc["fit_variable"] = "c^2";
    doc["nodes"] = {{"x", report.nodes.x_values},
                    {"c", report.nodes.c_values},
                    {"half_width", report.nodes.half_width}};
    doc["oracle_values"] = report.oracle_values;
    doc["estimate"] = report.estimate;
    doc["truth_abs_squared"] = report.truth_abs_squared;
    doc["error_units_nfact"] = report.error_units_nfact;
    doc["succeeded"] = report.succeeded;
    doc["variance_bound"] = finite_or_string(report.variance_bound);
    doc["gautschi_norm_bound"] = finite_or_string(report.gautschi_norm_bound);
    doc["vandermonde_condition"] = finite_or_string(report.vandermonde_condition);
    return doc.dump();
}

} // namespace lossyboson
