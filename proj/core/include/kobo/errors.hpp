/*
 * Copyright 2026 kobo authors
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

#ifndef KOBO_ERRORS_HPP
#define KOBO_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace kobo {

/// Broken caller-side precondition (dimension mismatch, invalid argument).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gram factorization failed for every jitter level that was attempted.
class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, std::vector<double> jitter_ladder)
        : std::runtime_error(what), m_JitterLadder(std::move(jitter_ladder)) {}

    const std::vector<double>& jitterLadder() const { return m_JitterLadder; }

private:
    std::vector<double> m_JitterLadder;
};

/// No lengthscale in the grid produced a usable factorization.
class SelectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An observed value exceeds the declared optimum output.
class KnownOptimumViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid method/problem names, missing context fields, malformed config.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace kobo

#endif // KOBO_ERRORS_HPP
