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

#ifndef LOSSYBOSON_ERRORS_HPP
#define LOSSYBOSON_ERRORS_HPP

#include <stdexcept>

namespace lossyboson {

/**
 * @brief Raised when a computation exceeds a hard size cap or loses numerical
 * validity (ill-conditioned solve, precision budget exhausted).
 *
 * Configuration mistakes (bad shapes, out-of-range parameters, malformed
 * input files) raise std::invalid_argument instead; the CLI maps the two
 * categories to distinct exit codes.
 */
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lossyboson

#endif // LOSSYBOSON_ERRORS_HPP
