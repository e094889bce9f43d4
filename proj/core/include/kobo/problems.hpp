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

#ifndef KOBO_PROBLEMS_HPP
#define KOBO_PROBLEMS_HPP

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kobo {

/// Analytic test problem in maximization convention (objectives that are
/// conventionally minimized are negated) with its optimum value known in
/// advance. evaluate(x) <= fTrueStar everywhere.
struct BenchmarkProblem {
    std::string name;
    int dim = 0;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    std::function<double(const Eigen::VectorXd&)> evaluate;
    double fTrueStar = 0.0;
    std::optional<Eigen::VectorXd> xStarKnown; // diagnostics only
};

BenchmarkProblem branin();
BenchmarkProblem hartmann3();
BenchmarkProblem hartmann6();
BenchmarkProblem alpine1(int dim);
BenchmarkProblem gsobol(int dim);

/// r_t = f* - max_{i<=t} y_i for every prefix; nonincreasing.
std::vector<double> simpleRegret(std::span<const double> y, double fStarTrue);

/// Lookup by registry name ("branin", "hartmann3", "hartmann6",
/// "alpine1-5", "gsobol-5", "gsobol-10"; alpine1-<d> and gsobol-<d>
/// generalize). Throws ConfigError for unknown names.
BenchmarkProblem makeProblem(const std::string& name);

/// Canonical registry names, for CLI listings and usage errors.
std::vector<std::string> problemRegistry();

} // namespace kobo

#endif // KOBO_PROBLEMS_HPP
